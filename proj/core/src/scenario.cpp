#include "ctxrt/scenario.hpp"

#include <algorithm>
#include <functional>

#include "ctxrt/error.hpp"

namespace ctxrt {

Scenario::Scenario(std::vector<std::string> measurements, std::vector<std::vector<std::size_t>> contexts,
                   std::vector<std::string> outcomes)
    : measurements_(std::move(measurements)), contexts_(std::move(contexts)), outcomes_(std::move(outcomes)) {
  if (outcomes_.size() < 2) throw InputError("scenario needs at least two outcomes");
  {
    auto sorted = outcomes_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("duplicate outcome label");
    }
  }
  {
    auto sorted = measurements_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("duplicate measurement label");
    }
  }
  if (contexts_.empty()) throw InputError("scenario needs at least one context");
  for (std::size_t c = 0; c < contexts_.size(); ++c) {
    const auto& ctx = contexts_[c];
    if (ctx.empty()) throw InputError("context " + std::to_string(c) + " is empty");
    for (std::size_t m : ctx) {
      if (m >= measurements_.size()) {
        throw InputError("context " + std::to_string(c) + " refers to unknown measurement " + std::to_string(m));
      }
    }
    auto sorted = ctx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("context " + std::to_string(c) + " repeats a measurement");
    }
  }
}

std::size_t Scenario::table_size(std::size_t c) const {
  std::size_t size = 1;
  for (std::size_t i = 0; i < contexts_.at(c).size(); ++i) size *= outcomes_.size();
  return size;
}

std::size_t Scenario::find_context(const std::vector<std::size_t>& ms) const {
  for (std::size_t c = 0; c < contexts_.size(); ++c) {
    if (contexts_[c] == ms) return c;
  }
  return npos;
}

bool CompatibilityGraph::adjacent(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  return edges.count({a, b}) > 0;
}

void CompatibilityGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b) return;
  if (a > b) std::swap(a, b);
  edges.insert({a, b});
}

Scenario make_cycle_scenario(int n) {
  if (n < 3) throw InputError("cycle scenario needs n >= 3, got " + std::to_string(n));
  std::vector<std::string> ms;
  std::vector<std::vector<std::size_t>> ctxs;
  for (int i = 0; i < n; ++i) {
    ms.push_back("X" + std::to_string(i));
    ctxs.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>((i + 1) % n)});
  }
  return Scenario(std::move(ms), std::move(ctxs), {"+1", "-1"});
}

int cycle_length(const Scenario& s) {
  const std::size_t n = s.measurement_count();
  if (n < 3 || s.context_count() != n) return 0;
  if (s.outcomes() != std::vector<std::string>{"+1", "-1"}) return 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.contexts()[i] != std::vector<std::size_t>{i, (i + 1) % n}) return 0;
  }
  return static_cast<int>(n);
}

CompatibilityGraph compatibility_graph(const Scenario& s) {
  CompatibilityGraph g;
  g.vertices = s.measurement_count();
  for (const auto& ctx : s.contexts()) {
    for (std::size_t a = 0; a < ctx.size(); ++a) {
      for (std::size_t b = a + 1; b < ctx.size(); ++b) g.add_edge(ctx[a], ctx[b]);
    }
  }
  return g;
}

bool is_induced_cycle(const CompatibilityGraph& g, const std::vector<std::size_t>& cycle) {
  const std::size_t k = cycle.size();
  if (k < 3) return false;
  for (std::size_t v : cycle) {
    if (v >= g.vertices) return false;
  }
  auto sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
      if (g.adjacent(cycle[i], cycle[j]) != consecutive) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> find_induced_cycles(const CompatibilityGraph& g, std::size_t min_len) {
  // DFS over simple paths starting at their smallest vertex; every vertex
  // added must be non-adjacent to all path vertices except its predecessor
  // (and, when closing, the start). This prunes chords as soon as they appear.
  std::vector<std::vector<std::size_t>> adj(g.vertices);
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(g.vertices, false);
  const std::size_t min_cycle = std::max<std::size_t>(min_len, 3);

  std::function<void()> extend = [&]() {
    const std::size_t start = path.front();
    const std::size_t last = path.back();
    for (std::size_t next : adj[last]) {
      if (next <= start || on_path[next]) continue;
      // chord check against interior path vertices
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        if (g.adjacent(next, path[i])) {
          chord = true;
          break;
        }
      }
      if (chord) continue;
      bool closes = path.size() >= 2 && g.adjacent(next, start);
      path.push_back(next);
      on_path[next] = true;
      if (closes) {
        // Cycle start..next; report once (second vertex < last vertex).
        if (path.size() >= min_cycle && path[1] < path.back()) found.push_back(path);
      } else {
        extend();
      }
      on_path[next] = false;
      path.pop_back();
    }
  };

  for (std::size_t s = 0; s < g.vertices; ++s) {
    path = {s};
    on_path[s] = true;
    extend();
    on_path[s] = false;
  }
  std::sort(found.begin(), found.end());
  return found;
}

bool admits_quantum_contextuality(const Scenario& s) {
  return !find_induced_cycles(compatibility_graph(s), 4).empty();
}

nlohmann::json to_json(const Scenario& s) {
  nlohmann::json j;
  j["measurements"] = s.measurements();
  j["contexts"] = s.contexts();
  j["outcomes"] = s.outcomes();
  return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw InputError("scenario must be a JSON object");
    for (const char* key : {"measurements", "contexts", "outcomes"}) {
      if (!j.contains(key)) throw InputError(std::string("scenario missing field '") + key + "'");
    }
    return Scenario(j.at("measurements").get<std::vector<std::string>>(),
                    j.at("contexts").get<std::vector<std::vector<std::size_t>>>(),
                    j.at("outcomes").get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed scenario JSON: ") + e.what());
  }
}

}  // namespace ctxrt
