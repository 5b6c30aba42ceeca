#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxrt/behavior.hpp"
#include "ctxrt/convert.hpp"
#include "ctxrt/monotone.hpp"
#include "ctxrt/ncycle.hpp"

namespace ctxrt {

enum class Property { locally_infinite, not_total, not_weak, infinite_height, infinite_width };

std::string to_string(Property p);
Property property_from_string(const std::string& s);

/// A named member of the B(alpha, gamma) family (F(alpha) is gamma = 0).
struct Witness {
  std::string name;
  Rational alpha;
  Rational gamma;
  Behavior behavior;
};

struct Claim {
  enum class Kind { convertible, not_convertible, monotone_pair };
  /// What a monotone pair witnesses.
  enum class Pairing { incomparable, inequivalent };

  Kind kind = Kind::convertible;
  std::size_t lhs = 0;  // witness indices
  std::size_t rhs = 0;
  std::optional<ConversionCertificate> certificate;  // convertible claims
  Pairing pairing = Pairing::incomparable;
  MonotoneValue npr_lhs, npr_rhs, omega_lhs, omega_rhs;  // monotone pairs
  bool holds = false;  // evidence matches the claim at construction time
  std::string note;
};

struct PropertyDemo {
  Property property = Property::not_total;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<Witness> witnesses;
  std::vector<Claim> claims;
  std::vector<std::string> conclusions;
  std::optional<nlohmann::json> erratum;

  /// True when every claim held at construction time.
  bool certified() const;
};

struct DemoOptions {
  std::size_t facet_k = 0;
  std::uint64_t seed = 0;
};

/// A = B(1, 3/4) and B = B(1/2, 0): opposed monotone orderings and
/// two-way LP infeasibility.
PropertyDemo demo_not_total(int n, const DemoOptions& opts = {});

/// A = B(1, 3/4), B = B(1/2, 0), C = B(1/2, 1/4): A incomparable to B and C,
/// yet B -> C.
PropertyDemo demo_not_weak(int n, const DemoOptions& opts = {});

/// F(alpha) along an ascending grid is a strict chain.
PropertyDemo demo_chain(int n, const std::vector<Rational>& grid, const DemoOptions& opts = {});

/// B(x, x) along a grid in (1/2, 1) is an antichain.
PropertyDemo demo_antichain(int n, const std::vector<Rational>& grid, const DemoOptions& opts = {});

/// `samples` pairwise inequivalent chain members strictly between F(1/4)
/// and F(3/4), each certified to lie in that interval.
PropertyDemo demo_locally_infinite(int n, std::size_t samples = 9, const DemoOptions& opts = {});

struct DemoVerification {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Re-checks every claim: certificates re-apply exactly, refutations are
/// re-solved, monotone values are recomputed.
DemoVerification verify_demo(const PropertyDemo& demo);

/// The published not-total witness B(1, 1/2) with its printed M_Omega = n-3
/// against the computed value.
struct PublishedWitnessCheck {
  int n = 0;
  Rational computed_m_omega;   // M_Omega(B(1, 1/2))
  Rational printed_m_omega;    // n - 3
  Rational lower_bound;        // n - 2, valid for every behavior
  bool printed_consistent = false;
};

PublishedWitnessCheck check_published_not_total_witness(int n, std::size_t facet_k = 0);

/// Record of the published literal witnesses and what they actually satisfy.
nlohmann::json published_witness_record(int n, std::size_t facet_k = 0);

/// Embeds an n-cycle behavior into `target` along the induced cycle `cycle`
/// (cycle[i] plays X_i); measurements off the cycle are independent and
/// uniform. Throws InputError when the cycle is not induced, has the wrong
/// length, or the target alphabet is not {"+1","-1"}.
Behavior embed_cycle_behavior(const Behavior& b, const Scenario& target, const std::vector<std::size_t>& cycle);

nlohmann::json to_json(const PropertyDemo& demo);

}  // namespace ctxrt
