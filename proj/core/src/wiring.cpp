#include "ctxrt/wiring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "ctxrt/error.hpp"
#include "ctxrt/lp.hpp"
#include "ctxrt/scenario.hpp"

namespace ctxrt {

namespace {

constexpr OutcomeMap kAllMaps[] = {OutcomeMap::identity, OutcomeMap::flip, OutcomeMap::constant_plus,
                                   OutcomeMap::constant_minus};

bool adjacent_on_cycle(int a, int b, int n) { return (a + 1) % n == b || (b + 1) % n == a; }

void check_cycle_behavior(const Behavior& b, int n) {
  int bn = cycle_length(b.scenario());
  if (bn == 0) throw InputError("wirings act on n-cycle behaviors only");
  if (bn != n) throw InputError("wiring for n=" + std::to_string(n) + " applied to an n=" + std::to_string(bn) + " behavior");
}

}  // namespace

std::string to_string(OutcomeMap g) {
  switch (g) {
    case OutcomeMap::identity: return "id";
    case OutcomeMap::flip: return "flip";
    case OutcomeMap::constant_plus: return "const+";
    case OutcomeMap::constant_minus: return "const-";
  }
  return "?";
}

OutcomeMap outcome_map_from_string(const std::string& s) {
  if (s == "id") return OutcomeMap::identity;
  if (s == "flip") return OutcomeMap::flip;
  if (s == "const+") return OutcomeMap::constant_plus;
  if (s == "const-") return OutcomeMap::constant_minus;
  throw InputError("unknown outcome map '" + s + "'");
}

std::size_t apply_outcome_map(OutcomeMap g, std::size_t outcome) {
  switch (g) {
    case OutcomeMap::identity: return outcome;
    case OutcomeMap::flip: return 1 - outcome;
    case OutcomeMap::constant_plus: return 0;
    case OutcomeMap::constant_minus: return 1;
  }
  return outcome;
}

bool is_bijection(OutcomeMap g) { return g == OutcomeMap::identity || g == OutcomeMap::flip; }

DeterministicWiring::DeterministicWiring(std::vector<int> h, std::vector<OutcomeMap> g)
    : h_(std::move(h)), g_(std::move(g)) {
  const int n = static_cast<int>(h_.size());
  if (n < 3) throw InputError("wiring needs n >= 3");
  if (g_.size() != h_.size()) throw InputError("wiring needs one outcome map per wing");
  for (int v : h_) {
    if (v < 0 || v >= n) throw InputError("vertex map value out of range");
  }
  for (int j = 0; j < n; ++j) {
    if (!adjacent_on_cycle(h_[static_cast<std::size_t>(j)], h_[static_cast<std::size_t>((j + 1) % n)], n)) {
      throw InputError("vertex map is not a homomorphism of C_" + std::to_string(n) + " at edge " + std::to_string(j));
    }
  }
}

DeterministicWiring DeterministicWiring::identity(int n) {
  std::vector<int> h(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) h[static_cast<std::size_t>(i)] = i;
  return DeterministicWiring(std::move(h), std::vector<OutcomeMap>(static_cast<std::size_t>(n), OutcomeMap::identity));
}

std::vector<int> DeterministicWiring::channel_key() const {
  std::vector<int> key;
  for (std::size_t j = 0; j < h_.size(); ++j) {
    switch (g_[j]) {
      case OutcomeMap::constant_plus: key.push_back(-1); break;
      case OutcomeMap::constant_minus: key.push_back(-2); break;
      case OutcomeMap::identity: key.push_back(2 * h_[j]); break;
      case OutcomeMap::flip: key.push_back(2 * h_[j] + 1); break;
    }
  }
  return key;
}

bool DeterministicWiring::operator<(const DeterministicWiring& other) const {
  return std::tie(h_, g_) < std::tie(other.h_, other.g_);
}

void WiringMixture::validate() const {
  if (components.empty()) throw InputError("wiring mixture is empty");
  Rational total(0);
  const int n = components.front().second.n();
  for (const auto& [w, wiring] : components) {
    if (sgn(w) < 0) throw InputError("negative mixture weight");
    if (wiring.n() != n) throw InputError("mixture components have different n");
    total += w;
  }
  if (total != 1) throw InputError("mixture weights sum to " + format_rational(total) + ", not 1");
}

ScenarioSignature signature(const Scenario& s) {
  ScenarioSignature sig;
  sig.measurements = s.measurement_count();
  for (const auto& c : s.contexts()) sig.context_sizes.push_back(c.size());
  sig.outcomes = s.outcome_count();
  return sig;
}

OperationType operation_type(const DeterministicWiring& w) {
  auto sig = signature(make_cycle_scenario(w.n()));
  return {sig, sig};
}

std::vector<std::vector<int>> enumerate_homomorphisms(int n) {
  if (n < 3) throw InputError("homomorphisms need n >= 3");
  std::vector<std::vector<int>> out;
  std::vector<int> h(static_cast<std::size_t>(n));
  // h[j+1] must be a neighbour of h[j]; the closing edge is checked at the end.
  auto rec = [&](auto&& self, int j) -> void {
    if (j == n) {
      if (adjacent_on_cycle(h[static_cast<std::size_t>(n - 1)], h[0], n)) out.push_back(h);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (j > 0 && !adjacent_on_cycle(h[static_cast<std::size_t>(j - 1)], v, n)) continue;
      h[static_cast<std::size_t>(j)] = v;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::size_t raw_deterministic_count(int n) {
  std::size_t pow4 = 1;
  for (int i = 0; i < n; ++i) pow4 *= 4;
  return enumerate_homomorphisms(n).size() * pow4;
}

namespace {

std::vector<DeterministicWiring> build_deterministic(int n) {
  const auto homs = enumerate_homomorphisms(n);
  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<DeterministicWiring> out;
  // For each set of constant wings, keep the first homomorphism for each
  // restriction to the remaining wings; all others induce the same channels.
  for (std::size_t const_mask = 0; const_mask < (std::size_t{1} << n); ++const_mask) {
    std::map<std::vector<int>, const std::vector<int>*> first_by_restriction;
    for (const auto& h : homs) {
      std::vector<int> restriction;
      for (std::size_t j = 0; j < un; ++j) {
        if (!((const_mask >> j) & 1U)) restriction.push_back(h[j]);
      }
      first_by_restriction.emplace(std::move(restriction), &h);
    }
    for (const auto& [restriction, h] : first_by_restriction) {
      // Each non-constant wing picks id/flip, each constant wing const+/const-.
      for (std::size_t choice = 0; choice < (std::size_t{1} << n); ++choice) {
        std::vector<OutcomeMap> g(un);
        for (std::size_t j = 0; j < un; ++j) {
          bool bit = (choice >> j) & 1U;
          if ((const_mask >> j) & 1U) g[j] = bit ? OutcomeMap::constant_minus : OutcomeMap::constant_plus;
          else g[j] = bit ? OutcomeMap::flip : OutcomeMap::identity;
        }
        out.emplace_back(*h, std::move(g));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::shared_ptr<const std::vector<DeterministicWiring>> enumerate_deterministic(int n, int cap) {
  if (n < 3) throw InputError("wiring enumeration needs n >= 3");
  if (n > cap) throw CapacityError("wiring enumeration capped at n <= " + std::to_string(cap));
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const std::vector<DeterministicWiring>>> memo;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  auto built = std::make_shared<const std::vector<DeterministicWiring>>(build_deterministic(n));
  memo.emplace(n, built);
  return built;
}

std::vector<DeterministicWiring> enumerate_symmetries(int n) {
  if (n < 3) throw InputError("symmetries need n >= 3");
  const std::size_t un = static_cast<std::size_t>(n);
  std::set<std::vector<int>> automorphisms;
  for (int r = 0; r < n; ++r) {
    std::vector<int> rot(un), refl(un);
    for (int j = 0; j < n; ++j) {
      rot[static_cast<std::size_t>(j)] = (r + j) % n;
      refl[static_cast<std::size_t>(j)] = ((r - j) % n + n) % n;
    }
    automorphisms.insert(rot);
    automorphisms.insert(refl);
  }
  std::vector<DeterministicWiring> out;
  for (const auto& h : automorphisms) {
    for (std::size_t choice = 0; choice < (std::size_t{1} << n); ++choice) {
      std::vector<OutcomeMap> g(un);
      for (std::size_t j = 0; j < un; ++j) {
        // Most significant wing first so the order is lexicographic in g.
        g[j] = ((choice >> (un - 1 - j)) & 1U) ? OutcomeMap::flip : OutcomeMap::identity;
      }
      out.emplace_back(h, std::move(g));
    }
  }
  return out;
}

Behavior apply_unchecked(const DeterministicWiring& w, const Behavior& b) {
  const int n = w.n();
  check_cycle_behavior(b, n);
  std::vector<RationalVector> tables;
  tables.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const std::size_t uj = static_cast<std::size_t>(j);
    const std::size_t next = static_cast<std::size_t>((j + 1) % n);
    const int a = w.h()[uj];
    const int c = w.h()[next];
    // Source context holding {a, c} and whether it is stored as (c, a).
    const bool reversed = (a + 1) % n != c;
    const std::size_t source = static_cast<std::size_t>(reversed ? c : a);
    const auto& src = b.table(source);
    RationalVector t(4, Rational(0));
    for (std::size_t idx = 0; idx < 4; ++idx) {
      if (sgn(src[idx]) == 0) continue;
      std::size_t s_first = idx / 2;
      std::size_t s_second = idx % 2;
      std::size_t s_a = reversed ? s_second : s_first;
      std::size_t s_c = reversed ? s_first : s_second;
      std::size_t out = apply_outcome_map(w.g()[uj], s_a) * 2 + apply_outcome_map(w.g()[next], s_c);
      t[out] += src[idx];
    }
    tables.push_back(std::move(t));
  }
  return Behavior(b.scenario_ptr(), std::move(tables));
}

Behavior apply(const DeterministicWiring& w, const Behavior& b) {
  check_cycle_behavior(b, w.n());
  if (!is_nondisturbing(b).nondisturbing) throw PreconditionError("wirings need a non-disturbing input behavior");
  return apply_unchecked(w, b);
}

Behavior apply_mixture(const WiringMixture& m, const Behavior& b) {
  m.validate();
  check_cycle_behavior(b, m.components.front().second.n());
  if (!is_nondisturbing(b).nondisturbing) throw PreconditionError("wirings need a non-disturbing input behavior");
  std::vector<RationalVector> tables(b.tables().size(), RationalVector(4, Rational(0)));
  for (const auto& [weight, wiring] : m.components) {
    if (sgn(weight) == 0) continue;
    Behavior image = apply_unchecked(wiring, b);
    for (std::size_t c = 0; c < tables.size(); ++c) {
      for (std::size_t e = 0; e < 4; ++e) tables[c][e] += weight * image.table(c)[e];
    }
  }
  return Behavior(b.scenario_ptr(), std::move(tables));
}

namespace {

OutcomeMap compose_maps(OutcomeMap inner, OutcomeMap outer) {
  // outer(inner(s)) for s in {0, 1}
  std::size_t on_plus = apply_outcome_map(outer, apply_outcome_map(inner, 0));
  std::size_t on_minus = apply_outcome_map(outer, apply_outcome_map(inner, 1));
  if (on_plus == on_minus) return on_plus == 0 ? OutcomeMap::constant_plus : OutcomeMap::constant_minus;
  return on_plus == 0 ? OutcomeMap::identity : OutcomeMap::flip;
}

}  // namespace

DeterministicWiring compose(const DeterministicWiring& first, const DeterministicWiring& second) {
  if (first.n() != second.n()) throw InputError("cannot compose wirings of different n");
  const std::size_t n = static_cast<std::size_t>(first.n());
  std::vector<int> h(n);
  std::vector<OutcomeMap> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t mid = static_cast<std::size_t>(second.h()[j]);
    h[j] = first.h()[mid];
    g[j] = compose_maps(first.g()[mid], second.g()[j]);
  }
  return DeterministicWiring(std::move(h), std::move(g));
}

DeterministicWiring inverse(const DeterministicWiring& w) {
  const std::size_t n = static_cast<std::size_t>(w.n());
  std::vector<int> h_inv(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t target = static_cast<std::size_t>(w.h()[j]);
    if (h_inv[target] != -1) throw InputError("wiring is not invertible: vertex map is not a bijection");
    h_inv[target] = static_cast<int>(j);
  }
  std::vector<OutcomeMap> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    OutcomeMap outer = w.g()[static_cast<std::size_t>(h_inv[j])];
    if (!is_bijection(outer)) throw InputError("wiring is not invertible: constant outcome map");
    g[j] = outer;  // id and flip are involutions
  }
  return DeterministicWiring(std::move(h_inv), std::move(g));
}

std::vector<Behavior> probe_basis(int n) {
  std::vector<Behavior> probes;
  const Rational half(1, 2);
  CorrelationVector zero{RationalVector(static_cast<std::size_t>(n), Rational(0)),
                         RationalVector(static_cast<std::size_t>(n), Rational(0))};
  probes.push_back(from_correlations(n, zero));
  for (int i = 0; i < n; ++i) {
    auto cv = zero;
    cv.marginals[static_cast<std::size_t>(i)] = half;
    probes.push_back(from_correlations(n, cv));
  }
  for (int i = 0; i < n; ++i) {
    auto cv = zero;
    cv.correlators[static_cast<std::size_t>(i)] = half;
    probes.push_back(from_correlations(n, cv));
  }
  return probes;
}

ChannelTable channel_of(const DeterministicWiring& w) {
  ChannelTable t;
  t.n = w.n();
  for (const auto& p : probe_basis(w.n())) t.images.push_back(apply_unchecked(w, p));
  return t;
}

ChannelTable channel_of(const WiringMixture& m) {
  m.validate();
  ChannelTable t;
  t.n = m.components.front().second.n();
  for (const auto& p : probe_basis(t.n)) t.images.push_back(apply_mixture(m, p));
  return t;
}

Decomposition decompose_in_polytope(const ChannelTable& channel, int cap) {
  const int n = channel.n;
  if (n < 3) throw InputError("channel needs n >= 3");
  const std::size_t probes = 2 * static_cast<std::size_t>(n) + 1;
  if (channel.images.size() != probes) {
    throw InputError("channel table needs " + std::to_string(probes) + " probe images");
  }
  for (const auto& img : channel.images) check_cycle_behavior(img, n);

  Decomposition result;
  // Mixtures of wirings send the non-disturbing probes to non-disturbing
  // images, so any disturbing or invalid image rules the channel out.
  for (const auto& img : channel.images) {
    if (!validate(img).ok || !is_nondisturbing(img).nondisturbing) return result;
  }

  const auto wirings = enumerate_deterministic(n, cap);
  const auto basis = probe_basis(n);

  // Table entries are nonnegative for every wiring, so a zero in the target
  // excludes each wiring that puts mass there.
  std::vector<std::size_t> kept;
  for (std::size_t d = 0; d < wirings->size(); ++d) {
    bool fits = true;
    for (std::size_t p = 0; p < probes && fits; ++p) {
      const Behavior image = apply_unchecked((*wirings)[d], basis[p]);
      for (std::size_t c = 0; c < image.tables().size() && fits; ++c) {
        const auto& t = image.table(c);
        const auto& target = channel.images[p].table(c);
        for (std::size_t e = 0; e < t.size(); ++e) {
          if (sgn(t[e]) > 0 && sgn(target[e]) == 0) {
            fits = false;
            break;
          }
        }
      }
    }
    if (fits) kept.push_back(d);
  }
  if (kept.empty()) return result;

  // Coordinates: correlations of the uniform-probe image, then correlations of
  // every other probe image minus the uniform one. The differences are sparse.
  auto coordinates = [&](const std::vector<Behavior>& imgs) {
    RationalVector out;
    const auto base = to_correlations(imgs[0]);
    out.insert(out.end(), base.marginals.begin(), base.marginals.end());
    out.insert(out.end(), base.correlators.begin(), base.correlators.end());
    for (std::size_t p = 1; p < imgs.size(); ++p) {
      const auto cv = to_correlations(imgs[p]);
      for (std::size_t i = 0; i < cv.marginals.size(); ++i) out.push_back(cv.marginals[i] - base.marginals[i]);
      for (std::size_t i = 0; i < cv.correlators.size(); ++i) out.push_back(cv.correlators[i] - base.correlators[i]);
    }
    return out;
  };

  const std::size_t cols = kept.size();
  std::vector<RationalVector> column_coords;
  column_coords.reserve(cols);
  for (std::size_t d : kept) {
    std::vector<Behavior> imgs;
    for (const auto& p : basis) imgs.push_back(apply_unchecked((*wirings)[d], p));
    column_coords.push_back(coordinates(imgs));
  }
  const RationalVector target = coordinates(channel.images);

  lp::LinearProgram program(cols);
  for (std::size_t e = 0; e < target.size(); ++e) {
    RationalVector row(cols);
    bool any = false;
    for (std::size_t d = 0; d < cols; ++d) {
      row[d] = column_coords[d][e];
      any = any || sgn(row[d]) != 0;
    }
    if (!any && sgn(target[e]) == 0) continue;
    program.add_eq(std::move(row), target[e]);
  }
  program.add_eq(RationalVector(cols, Rational(1)), Rational(1));

  auto outcome = lp::solve(program);
  if (!outcome.has_solution()) return result;
  result.feasible = true;
  WiringMixture mixture;
  for (std::size_t d = 0; d < cols; ++d) {
    if (sgn(outcome.solution[d]) != 0) mixture.components.emplace_back(outcome.solution[d], (*wirings)[kept[d]]);
  }
  result.mixture = std::move(mixture);
  return result;
}

nlohmann::json to_json(const DeterministicWiring& w) {
  std::vector<std::string> g;
  for (auto m : w.g()) g.push_back(to_string(m));
  return {{"n", w.n()}, {"h", w.h()}, {"g", g}};
}

DeterministicWiring wiring_from_json(const nlohmann::json& j) {
  try {
    int n = j.at("n").get<int>();
    auto h = j.at("h").get<std::vector<int>>();
    auto gs = j.at("g").get<std::vector<std::string>>();
    if (static_cast<int>(h.size()) != n || static_cast<int>(gs.size()) != n) {
      throw InputError("wiring arrays must have length n");
    }
    std::vector<OutcomeMap> g;
    for (const auto& s : gs) g.push_back(outcome_map_from_string(s));
    return DeterministicWiring(std::move(h), std::move(g));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed wiring JSON: ") + e.what());
  }
}

nlohmann::json to_json(const WiringMixture& m) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& [w, wiring] : m.components) {
    comps.push_back({{"weight", format_rational(w)}, {"wiring", to_json(wiring)}});
  }
  return {{"components", comps}};
}

WiringMixture mixture_from_json(const nlohmann::json& j) {
  try {
    WiringMixture m;
    for (const auto& c : j.at("components")) {
      m.components.emplace_back(parse_rational(c.at("weight").get<std::string>()), wiring_from_json(c.at("wiring")));
    }
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed mixture JSON: ") + e.what());
  }
}

}  // namespace ctxrt
