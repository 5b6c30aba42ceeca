#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxrt/behavior.hpp"
#include "ctxrt/rational.hpp"

namespace ctxrt {

/// Post-processing of one dichotomic outcome.
enum class OutcomeMap { identity, flip, constant_plus, constant_minus };

std::string to_string(OutcomeMap g);
OutcomeMap outcome_map_from_string(const std::string& s);
/// Applies `g` to an outcome index (0 = "+1", 1 = "-1").
std::size_t apply_outcome_map(OutcomeMap g, std::size_t outcome);
bool is_bijection(OutcomeMap g);

/// Type-preserving deterministic wiring of the n-cycle.
///
/// Output wing j queries source measurement h(j) and reports g_j of its
/// outcome. h must be a homomorphism of C_n so that every output context
/// {j, j+1} reads a genuine source context {h(j), h(j+1)}.
class DeterministicWiring {
 public:
  DeterministicWiring(std::vector<int> h, std::vector<OutcomeMap> g);

  static DeterministicWiring identity(int n);

  int n() const { return static_cast<int>(h_.size()); }
  const std::vector<int>& h() const { return h_; }
  const std::vector<OutcomeMap>& g() const { return g_; }

  /// Two wirings with equal keys induce the same map on non-disturbing
  /// behaviors: a constant wing ignores which measurement it queries.
  std::vector<int> channel_key() const;

  bool operator==(const DeterministicWiring&) const = default;
  bool operator<(const DeterministicWiring& other) const;

 private:
  std::vector<int> h_;
  std::vector<OutcomeMap> g_;
};

struct WiringMixture {
  std::vector<std::pair<Rational, DeterministicWiring>> components;

  /// Throws InputError unless weights are nonnegative, sum to exactly 1 and
  /// all wirings share one n.
  void validate() const;
};

struct ScenarioSignature {
  std::size_t measurements = 0;
  std::vector<std::size_t> context_sizes;
  std::size_t outcomes = 0;
  bool operator==(const ScenarioSignature&) const = default;
};

struct OperationType {
  ScenarioSignature source;
  ScenarioSignature target;
  bool operator==(const OperationType&) const = default;
};

ScenarioSignature signature(const Scenario& s);
OperationType operation_type(const DeterministicWiring& w);

/// All graph homomorphisms C_n -> C_n in lexicographic order.
std::vector<std::vector<int>> enumerate_homomorphisms(int n);

inline constexpr int kWiringEnumerationCap = 8;

/// |Hom(C_n, C_n)| * 4^n, the count before deduplication.
std::size_t raw_deterministic_count(int n);

/// Deterministic wirings deduplicated by induced channel, in (h, g)
/// lexicographic order; each class is represented by its first member.
/// Memoized per n; throws CapacityError above `cap`.
std::shared_ptr<const std::vector<DeterministicWiring>> enumerate_deterministic(int n, int cap = kWiringEnumerationCap);

/// Dihedral vertex maps with bijective outcome maps: 2n * 2^n wirings.
std::vector<DeterministicWiring> enumerate_symmetries(int n);

/// Applies the wiring. Throws PreconditionError for disturbing input and
/// InputError on cycle-length mismatch.
Behavior apply(const DeterministicWiring& w, const Behavior& b);
/// Same as apply() without the non-disturbance check; for bulk use on inputs
/// already known to be non-disturbing.
Behavior apply_unchecked(const DeterministicWiring& w, const Behavior& b);

Behavior apply_mixture(const WiringMixture& m, const Behavior& b);

/// The wiring equal to applying `first`, then `second`.
DeterministicWiring compose(const DeterministicWiring& first, const DeterministicWiring& second);

/// Inverse of a symmetry (automorphism h, bijective g). Throws InputError
/// otherwise.
DeterministicWiring inverse(const DeterministicWiring& w);

/// Explicit table of a candidate n -> n operation: the output tables it
/// produces on the 2n+1 probe behaviors of probe_basis(n). The probes span
/// the non-disturbing set affinely, so these tables fix the operation there.
struct ChannelTable {
  int n = 0;
  std::vector<Behavior> images;
};

/// Uniform box, then for each i the box with <X_i> = 1/2, then for each i the
/// box with <X_i X_{i+1}> = 1/2 (all other coordinates zero).
std::vector<Behavior> probe_basis(int n);

ChannelTable channel_of(const DeterministicWiring& w);
ChannelTable channel_of(const WiringMixture& m);

struct Decomposition {
  bool feasible = false;
  std::optional<WiringMixture> mixture;
};

/// Decides by LP whether `channel` is a convex combination of deterministic
/// wirings and returns exact weights when it is.
Decomposition decompose_in_polytope(const ChannelTable& channel, int cap = kWiringEnumerationCap);

nlohmann::json to_json(const DeterministicWiring& w);
DeterministicWiring wiring_from_json(const nlohmann::json& j);
nlohmann::json to_json(const WiringMixture& m);
WiringMixture mixture_from_json(const nlohmann::json& j);

}  // namespace ctxrt
