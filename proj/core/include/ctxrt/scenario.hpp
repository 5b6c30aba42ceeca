#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace ctxrt {

/// A compatibility scenario: measurement labels, the family of contexts
/// (jointly measurable subsets, as ordered index lists) and the outcome
/// alphabet. Immutable once constructed.
class Scenario {
 public:
  Scenario(std::vector<std::string> measurements, std::vector<std::vector<std::size_t>> contexts,
           std::vector<std::string> outcomes);

  const std::vector<std::string>& measurements() const { return measurements_; }
  const std::vector<std::vector<std::size_t>>& contexts() const { return contexts_; }
  const std::vector<std::string>& outcomes() const { return outcomes_; }

  std::size_t measurement_count() const { return measurements_.size(); }
  std::size_t context_count() const { return contexts_.size(); }
  std::size_t outcome_count() const { return outcomes_.size(); }

  /// Number of joint outcomes of context `c`, i.e. |O|^|c|.
  std::size_t table_size(std::size_t c) const;

  /// Index of the context whose measurement list is exactly `ms` (same
  /// order), or npos.
  std::size_t find_context(const std::vector<std::size_t>& ms) const;

  bool operator==(const Scenario&) const = default;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::string> measurements_;
  std::vector<std::vector<std::size_t>> contexts_;
  std::vector<std::string> outcomes_;
};

/// Simple undirected graph on measurement indices.
struct CompatibilityGraph {
  std::size_t vertices = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // stored with first < second

  bool adjacent(std::size_t a, std::size_t b) const;
  void add_edge(std::size_t a, std::size_t b);
};

/// n dichotomic measurements X0..X{n-1}, contexts {i, i+1 mod n}, outcomes
/// "+1", "-1". Throws InputError for n < 3.
Scenario make_cycle_scenario(int n);

/// Returns n if `s` is structurally the n-cycle scenario produced by
/// make_cycle_scenario, otherwise 0.
int cycle_length(const Scenario& s);

CompatibilityGraph compatibility_graph(const Scenario& s);

/// All chordless cycles with at least `min_len` vertices, each reported once
/// in canonical form: smallest vertex first, then the smaller of its two
/// neighbours on the cycle. Result sorted lexicographically.
std::vector<std::vector<std::size_t>> find_induced_cycles(const CompatibilityGraph& g, std::size_t min_len = 4);

/// True iff the compatibility graph has an induced cycle of length >= 4.
bool admits_quantum_contextuality(const Scenario& s);

/// True iff `cycle` is a chordless cycle of `g` visited in order.
bool is_induced_cycle(const CompatibilityGraph& g, const std::vector<std::size_t>& cycle);

nlohmann::json to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

}  // namespace ctxrt
