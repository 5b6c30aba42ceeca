#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxrt/behavior.hpp"
#include "ctxrt/ncycle.hpp"
#include "ctxrt/rational.hpp"
#include "ctxrt/wiring.hpp"

namespace ctxrt {

/// Extended-real monotone value: a finite rational or one of +/- infinity.
struct MonotoneValue {
  enum class Kind { finite, plus_infinity, minus_infinity };
  enum class Method { closed_form, oracle };

  Kind kind = Kind::finite;
  Rational value;
  std::optional<std::size_t> facet_k;
  Method method = Method::closed_form;

  static MonotoneValue finite(Rational v, Method m = Method::closed_form, std::optional<std::size_t> k = std::nullopt);
  static MonotoneValue plus_infinity(Method m = Method::closed_form);
  static MonotoneValue minus_infinity(Method m = Method::closed_form);

  bool is_finite() const { return kind == Kind::finite; }
  /// Comparison on the extended reals, ignoring facet and method.
  friend bool operator<(const MonotoneValue& a, const MonotoneValue& b);
  friend bool operator<=(const MonotoneValue& a, const MonotoneValue& b) { return !(b < a); }
  friend bool operator==(const MonotoneValue& a, const MonotoneValue& b) { return !(a < b) && !(b < a); }

  std::string to_string() const;
};

using Evaluation = std::function<Rational(const Behavior&)>;

/// max f(c) over candidates c with b -> c; -infinity when none is reachable.
MonotoneValue generic_yield(const Behavior& b, const std::vector<Behavior>& candidates, const Evaluation& f);
/// min f(c) over candidates c with c -> b; +infinity when none reaches b.
MonotoneValue generic_cost(const Behavior& b, const std::vector<Behavior>& candidates, const Evaluation& f);

/// Yield of Omega over all non-disturbing behaviors: n-2 for free behaviors,
/// otherwise the value of the unique strictly violated facet.
MonotoneValue m_omega(const Behavior& b);

/// max over images(b) and over facets of Omega_k; equals m_omega by
/// linearity of Omega over the hull.
MonotoneValue m_omega_oracle(const Behavior& b);

/// Cost of b relative to the chain F(alpha), as n + 2(alpha* - 1).
MonotoneValue m_npr(const Behavior& b);

/// Minimal alpha with F(alpha) -> b (closed form), or nullopt when no alpha in
/// [0,1] works. 0 for free behaviors.
std::optional<Rational> npr_alpha(const Behavior& b);

struct MnprCrossCheck {
  bool passed = false;
  bool free = false;
  std::optional<std::size_t> facet_k;
  std::optional<Rational> alpha_star;
  Rational delta;
  bool reaches_at_alpha = false;     // F(alpha*) -> b
  bool below_checked = false;        // false when alpha* - delta < 0
  bool refuted_below = false;        // F(alpha* - delta) -/-> b
  bool degenerate = false;           // b == F(alpha*) exactly
  std::optional<Rational> gamma;
  bool boundary_has_zero = false;
  bool boundary_saturates = false;
  std::vector<std::string> notes;
};

/// Confirms the closed-form alpha* of m_npr against the LP oracle and checks
/// the extracted boundary point B~ (zero entry, Omega = n-2).
MnprCrossCheck cross_check_m_npr(const Behavior& b, const Rational& delta = Rational(1, 100));

nlohmann::json to_json(const MonotoneValue& v, const std::string& monotone_name);

}  // namespace ctxrt
