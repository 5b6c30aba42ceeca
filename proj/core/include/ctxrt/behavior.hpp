#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxrt/rational.hpp"
#include "ctxrt/scenario.hpp"

namespace ctxrt {

/// One exact probability table per context of a scenario.
///
/// Table entries are indexed in mixed radix over the context's measurements,
/// first measurement most significant, digits being outcome indices. For the
/// dichotomic alphabet {"+1","-1"} the entries of a two-measurement context are
/// (++), (+-), (-+), (--).
class Behavior {
 public:
  Behavior(std::shared_ptr<const Scenario> scenario, std::vector<RationalVector> tables);
  Behavior(const Scenario& scenario, std::vector<RationalVector> tables);

  const Scenario& scenario() const { return *scenario_; }
  const std::shared_ptr<const Scenario>& scenario_ptr() const { return scenario_; }
  const std::vector<RationalVector>& tables() const { return tables_; }
  const RationalVector& table(std::size_t c) const { return tables_.at(c); }

  /// Probability of the joint outcome given as outcome indices.
  const Rational& probability(std::size_t c, const std::vector<std::size_t>& outcome_indices) const;

  bool operator==(const Behavior& other) const;

 private:
  std::shared_ptr<const Scenario> scenario_;
  std::vector<RationalVector> tables_;
};

/// Probability distribution over global assignments (one outcome index per
/// measurement). Only nonzero weights are stored.
struct GlobalSection {
  std::map<std::vector<std::size_t>, Rational> weights;
};

struct ValidationReport {
  bool ok = true;
  std::optional<std::size_t> context;  // first offending context
  std::string message;
};

/// Checks every table is normalized and has entries in [0,1].
ValidationReport validate(const Behavior& b);

struct DisturbanceReport {
  bool nondisturbing = true;
  // First violating pair of contexts and their shared measurements.
  std::optional<std::pair<std::size_t, std::size_t>> contexts;
  std::vector<std::size_t> overlap;
};

DisturbanceReport is_nondisturbing(const Behavior& b);

/// Marginal of context `c`'s table onto the measurement subset `ms` (each a
/// member of the context, in the given order).
RationalVector marginal(const Behavior& b, std::size_t c, const std::vector<std::size_t>& ms);

struct NoncontextualityResult {
  bool noncontextual = false;
  std::optional<GlobalSection> section;
};

inline constexpr std::size_t kDefaultAssignmentCap = std::size_t{1} << 20;

/// Decides whether `b` admits a global section by LP over all deterministic
/// global assignments. Throws PreconditionError for disturbing input and
/// CapacityError when |O|^|M| exceeds `cap`.
NoncontextualityResult is_noncontextual(const Behavior& b, std::size_t cap = kDefaultAssignmentCap);

/// Marginalizes a global section onto every context of `scenario`.
Behavior behavior_from_section(const Scenario& scenario, const GlobalSection& section);

/// Context-wise w*b1 + (1-w)*b2. Throws InputError on scenario mismatch or
/// w outside [0,1].
Behavior mix(const Behavior& b1, const Behavior& b2, const Rational& w);

/// <X_i X_j> for a context containing both i and j. Requires the dichotomic
/// alphabet {"+1","-1"}.
Rational correlator(const Behavior& b, std::size_t i, std::size_t j);

/// <X_i>, read from the first context containing i.
Rational single_marginal(const Behavior& b, std::size_t i);

/// Expectation coordinates of a cycle behavior: marginals <X_i> and
/// correlators <X_i X_{i+1}> of context i.
struct CorrelationVector {
  RationalVector marginals;
  RationalVector correlators;
  bool operator==(const CorrelationVector&) const = default;
};

CorrelationVector to_correlations(const Behavior& b);
/// Inverse of to_correlations for non-disturbing cycle behaviors:
/// p(a,b|i) = (1 + a<X_i> + b<X_{i+1}> + ab<X_iX_{i+1}>)/4. The result is not
/// validated (entries may be negative for non-realizable vectors).
Behavior from_correlations(int n, const CorrelationVector& cv);

/// Outcome string of a joint outcome: labels joined by commas.
std::string outcome_string(const Scenario& s, std::size_t c, std::size_t index);

nlohmann::json to_json(const Behavior& b);
/// Accepts {"scenario": {...}, "tables": {...}}. Missing outcome strings mean
/// probability zero. Scenario may be an inline object; `resolve_path` handles
/// a string path (pass nullptr to reject paths).
Behavior behavior_from_json(const nlohmann::json& j,
                            const std::function<nlohmann::json(const std::string&)>& resolve_path = nullptr);

nlohmann::json to_json(const GlobalSection& g, const Scenario& s);

}  // namespace ctxrt
