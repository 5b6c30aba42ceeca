#include "ctxrt/monotone.hpp"

#include "ctxrt/convert.hpp"
#include "ctxrt/error.hpp"

namespace ctxrt {

namespace {

int require_nd_cycle(const Behavior& b) {
  int n = cycle_length(b.scenario());
  if (n == 0) throw InputError("monotones are defined on n-cycle behaviors");
  if (auto v = validate(b); !v.ok) throw InputError("invalid behavior: " + v.message);
  if (!is_nondisturbing(b).nondisturbing) throw PreconditionError("monotones need a non-disturbing behavior");
  return n;
}

int rank(const MonotoneValue& v) {
  switch (v.kind) {
    case MonotoneValue::Kind::minus_infinity: return 0;
    case MonotoneValue::Kind::finite: return 1;
    case MonotoneValue::Kind::plus_infinity: return 2;
  }
  return 1;
}

}  // namespace

MonotoneValue MonotoneValue::finite(Rational v, Method m, std::optional<std::size_t> k) {
  MonotoneValue out;
  out.value = std::move(v);
  out.method = m;
  out.facet_k = k;
  return out;
}

MonotoneValue MonotoneValue::plus_infinity(Method m) {
  MonotoneValue out;
  out.kind = Kind::plus_infinity;
  out.method = m;
  return out;
}

MonotoneValue MonotoneValue::minus_infinity(Method m) {
  MonotoneValue out;
  out.kind = Kind::minus_infinity;
  out.method = m;
  return out;
}

bool operator<(const MonotoneValue& a, const MonotoneValue& b) {
  if (rank(a) != rank(b)) return rank(a) < rank(b);
  if (a.is_finite()) return a.value < b.value;
  return false;
}

std::string MonotoneValue::to_string() const {
  switch (kind) {
    case Kind::plus_infinity: return "+inf";
    case Kind::minus_infinity: return "-inf";
    case Kind::finite: return format_rational(value);
  }
  return "?";
}

MonotoneValue generic_yield(const Behavior& b, const std::vector<Behavior>& candidates, const Evaluation& f) {
  MonotoneValue best = MonotoneValue::minus_infinity(MonotoneValue::Method::oracle);
  for (const auto& c : candidates) {
    if (!can_convert(b, c).convertible()) continue;
    auto v = MonotoneValue::finite(f(c), MonotoneValue::Method::oracle);
    if (best < v) best = v;
  }
  return best;
}

MonotoneValue generic_cost(const Behavior& b, const std::vector<Behavior>& candidates, const Evaluation& f) {
  MonotoneValue best = MonotoneValue::plus_infinity(MonotoneValue::Method::oracle);
  for (const auto& c : candidates) {
    if (!can_convert(c, b).convertible()) continue;
    auto v = MonotoneValue::finite(f(c), MonotoneValue::Method::oracle);
    if (v < best) best = v;
  }
  return best;
}

MonotoneValue m_omega(const Behavior& b) {
  const int n = require_nd_cycle(b);
  auto facet = violated_facet(b);
  if (!facet) return MonotoneValue::finite(Rational(n - 2));
  return MonotoneValue::finite(omega_value(*facet, b), MonotoneValue::Method::closed_form, facet->index());
}

MonotoneValue m_omega_oracle(const Behavior& b) {
  require_nd_cycle(b);
  const ImageSet imgs = images(b);
  std::optional<Rational> best;
  std::size_t best_k = 0;
  for (const auto& img : imgs.behaviors) {
    auto values = omega_values(img);
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!best || values[k] > *best) {
        best = values[k];
        best_k = k;
      }
    }
  }
  return MonotoneValue::finite(*best, MonotoneValue::Method::oracle, best_k);
}

std::optional<Rational> npr_alpha(const Behavior& b) {
  const int n = require_nd_cycle(b);
  auto facet = violated_facet(b);
  if (!facet) return Rational(0);

  // With c = Omega(b) - (n-2) > 0, F(alpha) -> b iff b = g B~ + (1-g) F(alpha)
  // for some boundary point B~, where 1-g = c/(2 alpha). Nonnegativity of B~
  // entry by entry reads A - K/alpha >= 0 with
  //   A = p_b - (c/2) p_PR + (c/2) p_NPR,  K = (c/2) p_NPR >= 0,
  // and g >= 0 gives alpha >= c/2.
  const Rational c = omega_value(*facet, b) - (n - 2);
  const Rational half_c = c / 2;
  const Behavior pr = make_pr(*facet);
  const Behavior npr = make_npr(*facet);
  Rational alpha = half_c;
  for (std::size_t ctx = 0; ctx < b.tables().size(); ++ctx) {
    for (std::size_t e = 0; e < 4; ++e) {
      const Rational k_coef = half_c * npr.table(ctx)[e];
      const Rational a_coef = b.table(ctx)[e] - half_c * pr.table(ctx)[e] + k_coef;
      if (sgn(k_coef) == 0) {
        if (sgn(a_coef) < 0) return std::nullopt;
        continue;
      }
      if (sgn(a_coef) <= 0) return std::nullopt;
      Rational bound = k_coef / a_coef;
      if (bound > alpha) alpha = bound;
    }
  }
  if (alpha > 1) return std::nullopt;
  return alpha;
}

MonotoneValue m_npr(const Behavior& b) {
  const int n = require_nd_cycle(b);
  auto facet = violated_facet(b);
  if (!facet) return MonotoneValue::finite(Rational(n - 2));
  auto alpha = npr_alpha(b);
  if (!alpha) {
    auto v = MonotoneValue::plus_infinity();
    v.facet_k = facet->index();
    return v;
  }
  return MonotoneValue::finite(n + 2 * (*alpha - 1), MonotoneValue::Method::closed_form, facet->index());
}

MnprCrossCheck cross_check_m_npr(const Behavior& b, const Rational& delta) {
  const int n = require_nd_cycle(b);
  MnprCrossCheck r;
  r.delta = delta;
  auto facet = violated_facet(b);
  const OmegaFunctional f = facet ? *facet : OmegaFunctional::from_index(n, 0);
  if (facet) r.facet_k = facet->index();
  r.free = !facet;
  r.alpha_star = npr_alpha(b);
  if (!r.alpha_star) {
    // Infinite cost: no member of the chain reaches b, in particular F(1).
    r.reaches_at_alpha = false;
    r.refuted_below = !can_convert(make_f_alpha(f, Rational(1)), b).convertible();
    r.below_checked = true;
    r.notes.push_back("no alpha in [0,1]; F(1) does not reach b");
    r.passed = r.refuted_below;
    return r;
  }
  const Rational alpha = *r.alpha_star;
  const Behavior f_alpha = make_f_alpha(f, alpha);
  r.reaches_at_alpha = can_convert(f_alpha, b).convertible();
  const Rational lower = alpha - delta;
  if (sgn(lower) >= 0) {
    r.below_checked = true;
    r.refuted_below = !can_convert(make_f_alpha(f, lower), b).convertible();
  } else {
    r.notes.push_back("alpha* - delta < 0; lower refutation is vacuous");
  }

  if (r.free) {
    r.notes.push_back("free behavior; alpha* = 0");
    r.passed = r.reaches_at_alpha && sgn(alpha) == 0;
    return r;
  }

  // Boundary point of the optimal decomposition.
  const Rational c = omega_value(f, b) - (n - 2);
  const Rational one_minus_gamma = c / (2 * alpha);
  const Rational gamma = 1 - one_minus_gamma;
  r.gamma = gamma;
  if (sgn(gamma) == 0) {
    r.degenerate = b == f_alpha;
    r.boundary_has_zero = true;
    r.boundary_saturates = true;
    r.notes.push_back("gamma = 0: b lies on the chain");
  } else {
    std::vector<RationalVector> tables;
    bool has_zero = false;
    for (std::size_t ctx = 0; ctx < b.tables().size(); ++ctx) {
      RationalVector t(4);
      for (std::size_t e = 0; e < 4; ++e) {
        t[e] = (b.table(ctx)[e] - one_minus_gamma * f_alpha.table(ctx)[e]) / gamma;
        if (sgn(t[e]) == 0) has_zero = true;
      }
      tables.push_back(std::move(t));
    }
    Behavior boundary(b.scenario_ptr(), std::move(tables));
    r.boundary_has_zero = has_zero && validate(boundary).ok;
    r.boundary_saturates = omega_value(f, boundary) == n - 2;
  }
  r.passed = r.reaches_at_alpha && (!r.below_checked || r.refuted_below) && r.boundary_has_zero &&
             r.boundary_saturates && (sgn(*r.gamma) != 0 || r.degenerate);
  return r;
}

nlohmann::json to_json(const MonotoneValue& v, const std::string& monotone_name) {
  nlohmann::json j;
  j["monotone"] = monotone_name;
  j["value"] = v.to_string();
  j["facet_k"] = v.facet_k ? nlohmann::json(*v.facet_k) : nlohmann::json(nullptr);
  j["method"] = v.method == MonotoneValue::Method::closed_form ? "closed_form" : "oracle";
  return j;
}

}  // namespace ctxrt
