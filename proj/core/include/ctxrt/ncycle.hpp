#pragma once

#include <array>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "ctxrt/behavior.hpp"
#include "ctxrt/rational.hpp"

namespace ctxrt {

/// 100 significant decimal digits; used only for the informational quantum
/// bound, never in exact decision paths.
using HighPrecision = boost::multiprecision::cpp_dec_float_100;

/// One facet functional Omega = sum_i s_i <X_i X_{i+1}> of the n-cycle
/// noncontextual polytope. The number of -1 signs is odd.
class OmegaFunctional {
 public:
  explicit OmegaFunctional(std::vector<int> signs);

  /// Facet with rank `k` in the canonical order (see enumerate_facets).
  static OmegaFunctional from_index(int n, std::size_t k);

  int n() const { return static_cast<int>(signs_.size()); }
  const std::vector<int>& signs() const { return signs_; }
  /// Rank in the canonical order.
  std::size_t index() const;

  bool operator==(const OmegaFunctional&) const = default;

 private:
  std::vector<int> signs_;
};

/// All 2^(n-1) facets, lexicographic over sign vectors with -1 < +1.
std::vector<OmegaFunctional> enumerate_facets(int n);

Rational omega_value(const OmegaFunctional& f, const Behavior& b);

/// Values of every facet on `b`, in canonical order.
RationalVector omega_values(const Behavior& b);

/// The unique facet strictly above n-2, if any.
std::optional<OmegaFunctional> violated_facet(const Behavior& b);

/// Per context i, the four quantities 4p(ab|X_iX_{i+1}) in the order
/// (++), (+-), (-+), (--), rebuilt from the expectation values.
std::vector<std::array<Rational, 4>> positivity_residuals(const Behavior& b);

struct CycleBounds {
  int n = 0;
  Rational classical;
  HighPrecision quantum;
  Rational algebraic_max;
};

/// Classical n-2, quantum Tsirelson-type bound, algebraic maximum n.
/// Throws InputError for n < 4.
CycleBounds bounds(int n);

Behavior make_pr(const OmegaFunctional& f);
Behavior make_maximally_mixed(int n);
/// ((n-2)/n) B_PR + (2/n) B_mixed; saturates its facet at n-2.
Behavior make_npr(const OmegaFunctional& f);
/// alpha B_PR + (1-alpha) B_NPR.
Behavior make_f_alpha(const OmegaFunctional& f, const Rational& alpha);
/// gamma B*_bb + (1-gamma) F(alpha), with B*_bb = canonical_bbb(f).
Behavior make_b_alpha_gamma(const OmegaFunctional& f, const Rational& alpha, const Rational& gamma);

/// Deterministic behavior saturating `f` at n-2: the first global assignment
/// (in lexicographic order, "+1" before "-1") maximizing sum_i s_i l_i l_{i+1}.
Behavior canonical_bbb(const OmegaFunctional& f);

/// Deterministic behavior of a global assignment given as +1/-1 values.
Behavior make_deterministic(const std::vector<int>& values);

}  // namespace ctxrt
