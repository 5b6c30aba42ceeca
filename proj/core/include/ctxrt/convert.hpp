#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxrt/behavior.hpp"
#include "ctxrt/ncycle.hpp"
#include "ctxrt/wiring.hpp"

namespace ctxrt {

/// Distinct images of `b` under the deterministic wirings, each with the
/// first wiring producing it.
struct ImageSet {
  std::vector<Behavior> behaviors;
  std::vector<DeterministicWiring> wirings;
};

/// Requires a non-disturbing n-cycle behavior.
ImageSet images(const Behavior& b, int cap = kWiringEnumerationCap);

enum class Verdict { convertible, not_convertible };

std::string to_string(Verdict v);

struct ConversionCertificate {
  Verdict verdict = Verdict::not_convertible;
  std::optional<WiringMixture> weights;  // set when convertible

  bool convertible() const { return verdict == Verdict::convertible; }
};

/// LP over the convex hull of images(b1): b1 -> b2 iff b2 lies in it.
/// Throws InputError on type mismatch and PreconditionError on disturbing
/// inputs.
ConversionCertificate can_convert(const Behavior& b1, const Behavior& b2, int cap = kWiringEnumerationCap);

/// Re-checks a convertible certificate: apply_mixture(weights, b1) == b2.
bool verify_certificate(const ConversionCertificate& cert, const Behavior& b1, const Behavior& b2);

enum class Relation { strictly_above, strictly_below, equivalent, incomparable };

std::string to_string(Relation r);

struct PairClassification {
  Relation relation = Relation::incomparable;
  ConversionCertificate forward;   // b1 -> b2
  ConversionCertificate backward;  // b2 -> b1
};

PairClassification classify(const Behavior& b1, const Behavior& b2, int cap = kWiringEnumerationCap);

/// Convertibility restricted to the screened-off region of `f`: hull of the
/// images of b1 strictly violating f plus one free boundary point with
/// Omega_f = n-2. Requires Omega_f(b2) > n-2 (PreconditionError otherwise).
/// Returned certificates are ordinary wiring mixtures.
ConversionCertificate screened_convert(const Behavior& b1, const Behavior& b2, const OmegaFunctional& f,
                                       int cap = kWiringEnumerationCap);

/// Certificate for b -> keep*b + (1-keep)*free_part: the identity wiring with
/// weight `keep` plus constant wirings preparing `free_part`. Throws
/// PreconditionError when free_part is contextual.
ConversionCertificate mixing_certificate(const Behavior& b, const Rational& keep, const Behavior& free_part);

nlohmann::json to_json(const ConversionCertificate& cert, const Behavior& lhs, const Behavior& rhs);

}  // namespace ctxrt
