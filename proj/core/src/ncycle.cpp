#include "ctxrt/ncycle.hpp"

#include <boost/math/constants/constants.hpp>

#include "ctxrt/error.hpp"

namespace ctxrt {

namespace {

int require_cycle(const Behavior& b) {
  int n = cycle_length(b.scenario());
  if (n == 0) throw InputError("behavior is not on an n-cycle scenario");
  return n;
}

int sign_of(std::size_t outcome_index) { return outcome_index == 0 ? 1 : -1; }

void check_unit_interval(const Rational& x, const char* name) {
  if (sgn(x) < 0 || x > 1) throw InputError(std::string(name) + " must lie in [0,1], got " + format_rational(x));
}

}  // namespace

OmegaFunctional::OmegaFunctional(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.size() < 3) throw InputError("facet functional needs n >= 3");
  int negatives = 0;
  for (int s : signs_) {
    if (s != 1 && s != -1) throw InputError("facet signs must be +1 or -1");
    if (s == -1) ++negatives;
  }
  if (negatives % 2 == 0) throw InputError("facet needs an odd number of -1 signs");
}

OmegaFunctional OmegaFunctional::from_index(int n, std::size_t k) {
  auto facets = enumerate_facets(n);
  if (k >= facets.size()) {
    throw InputError("facet index " + std::to_string(k) + " out of range for n=" + std::to_string(n));
  }
  return facets[k];
}

std::size_t OmegaFunctional::index() const {
  // Rank among odd-parity vectors in lexicographic order (-1 < +1): treat -1 as
  // bit 0 and +1 as bit 1; odd-parity vectors alternate with even ones in
  // pairs fixed by the last coordinate, so the rank is the prefix value.
  std::size_t prefix = 0;
  for (std::size_t i = 0; i + 1 < signs_.size(); ++i) prefix = prefix * 2 + (signs_[i] == 1 ? 1 : 0);
  return prefix;
}

std::vector<OmegaFunctional> enumerate_facets(int n) {
  if (n < 3) throw InputError("facets need n >= 3");
  if (n > 24) throw CapacityError("facet enumeration capped at n <= 24");
  std::vector<OmegaFunctional> out;
  const std::size_t total = std::size_t{1} << n;
  for (std::size_t bits = 0; bits < total; ++bits) {
    std::vector<int> signs(static_cast<std::size_t>(n));
    int negatives = 0;
    for (int i = 0; i < n; ++i) {
      bool plus = (bits >> (n - 1 - i)) & 1U;
      signs[static_cast<std::size_t>(i)] = plus ? 1 : -1;
      if (!plus) ++negatives;
    }
    if (negatives % 2 == 1) out.emplace_back(std::move(signs));
  }
  return out;
}

Rational omega_value(const OmegaFunctional& f, const Behavior& b) {
  int n = require_cycle(b);
  if (n != f.n()) throw InputError("facet and behavior have different cycle lengths");
  Rational total(0);
  for (int i = 0; i < n; ++i) {
    const auto& t = b.table(static_cast<std::size_t>(i));
    Rational corr = t[0] - t[1] - t[2] + t[3];
    if (f.signs()[static_cast<std::size_t>(i)] > 0) total += corr;
    else total -= corr;
  }
  return total;
}

RationalVector omega_values(const Behavior& b) {
  int n = require_cycle(b);
  RationalVector out;
  for (const auto& f : enumerate_facets(n)) out.push_back(omega_value(f, b));
  return out;
}

std::optional<OmegaFunctional> violated_facet(const Behavior& b) {
  int n = require_cycle(b);
  // The only candidate is the sign pattern of the correlators, with the
  // weakest correlator flipped when the parity is even.
  RationalVector corr;
  for (int i = 0; i < n; ++i) {
    const auto& t = b.table(static_cast<std::size_t>(i));
    corr.push_back(t[0] - t[1] - t[2] + t[3]);
  }
  std::vector<int> signs;
  int negatives = 0;
  for (const auto& c : corr) {
    signs.push_back(sgn(c) < 0 ? -1 : 1);
    if (signs.back() < 0) ++negatives;
  }
  if (negatives % 2 == 0) {
    std::size_t weakest = 0;
    for (std::size_t i = 1; i < corr.size(); ++i) {
      if (abs(corr[i]) < abs(corr[weakest])) weakest = i;
    }
    signs[weakest] = -signs[weakest];
  }
  OmegaFunctional f(std::move(signs));
  if (omega_value(f, b) > n - 2) return f;
  return std::nullopt;
}

std::vector<std::array<Rational, 4>> positivity_residuals(const Behavior& b) {
  int n = require_cycle(b);
  std::vector<std::array<Rational, 4>> out;
  for (int i = 0; i < n; ++i) {
    std::size_t ui = static_cast<std::size_t>(i);
    Rational mi = single_marginal(b, ui);
    Rational mj = single_marginal(b, static_cast<std::size_t>((i + 1) % n));
    Rational c = correlator(b, ui, static_cast<std::size_t>((i + 1) % n));
    std::array<Rational, 4> r;
    for (std::size_t idx = 0; idx < 4; ++idx) {
      int a = sign_of(idx / 2);
      int bb = sign_of(idx % 2);
      r[idx] = 1 + a * mi + bb * mj + a * bb * c;
    }
    out.push_back(std::move(r));
  }
  return out;
}

CycleBounds bounds(int n) {
  if (n < 4) throw InputError("bounds need n >= 4, got " + std::to_string(n));
  CycleBounds b;
  b.n = n;
  b.classical = n - 2;
  b.algebraic_max = n;
  const HighPrecision pi = boost::math::constants::pi<HighPrecision>();
  const HighPrecision c = boost::multiprecision::cos(pi / n);
  if (n % 2 == 0) {
    b.quantum = n * c;
  } else {
    b.quantum = (3 * n * c - n) / (1 + c);
  }
  return b;
}

Behavior make_pr(const OmegaFunctional& f) {
  const int n = f.n();
  auto scenario = std::make_shared<const Scenario>(make_cycle_scenario(n));
  std::vector<RationalVector> tables;
  for (int i = 0; i < n; ++i) {
    RationalVector t(4);
    for (std::size_t idx = 0; idx < 4; ++idx) {
      int product = sign_of(idx / 2) * sign_of(idx % 2);
      t[idx] = Rational(1 + f.signs()[static_cast<std::size_t>(i)] * product, 4);
      t[idx].canonicalize();
    }
    tables.push_back(std::move(t));
  }
  return Behavior(scenario, std::move(tables));
}

Behavior make_maximally_mixed(int n) {
  auto scenario = std::make_shared<const Scenario>(make_cycle_scenario(n));
  std::vector<RationalVector> tables(static_cast<std::size_t>(n), RationalVector(4, Rational(1, 4)));
  return Behavior(scenario, std::move(tables));
}

Behavior make_npr(const OmegaFunctional& f) {
  const int n = f.n();
  Rational x(n - 2, n);
  x.canonicalize();
  return mix(make_pr(f), make_maximally_mixed(n), x);
}

Behavior make_f_alpha(const OmegaFunctional& f, const Rational& alpha) {
  check_unit_interval(alpha, "alpha");
  return mix(make_pr(f), make_npr(f), alpha);
}

Behavior make_b_alpha_gamma(const OmegaFunctional& f, const Rational& alpha, const Rational& gamma) {
  check_unit_interval(alpha, "alpha");
  check_unit_interval(gamma, "gamma");
  return mix(canonical_bbb(f), make_f_alpha(f, alpha), gamma);
}

Behavior make_deterministic(const std::vector<int>& values) {
  const int n = static_cast<int>(values.size());
  auto scenario = std::make_shared<const Scenario>(make_cycle_scenario(n));
  std::vector<RationalVector> tables;
  for (int i = 0; i < n; ++i) {
    int a = values[static_cast<std::size_t>(i)];
    int b = values[static_cast<std::size_t>((i + 1) % n)];
    if ((a != 1 && a != -1) || (b != 1 && b != -1)) throw InputError("deterministic values must be +1 or -1");
    RationalVector t(4, Rational(0));
    t[(a == 1 ? 0 : 2) + (b == 1 ? 0 : 1)] = 1;
    tables.push_back(std::move(t));
  }
  return Behavior(scenario, std::move(tables));
}

Behavior canonical_bbb(const OmegaFunctional& f) {
  const int n = f.n();
  std::vector<int> best;
  int best_value = 0;
  const std::size_t total = std::size_t{1} << n;
  for (std::size_t bits = 0; bits < total; ++bits) {
    std::vector<int> lambda(static_cast<std::size_t>(n));
    // Outcome index 0 ("+1") sorts first; bit 1 at position i means "-1".
    for (int i = 0; i < n; ++i) lambda[static_cast<std::size_t>(i)] = ((bits >> (n - 1 - i)) & 1U) ? -1 : 1;
    int value = 0;
    for (int i = 0; i < n; ++i) {
      value += f.signs()[static_cast<std::size_t>(i)] * lambda[static_cast<std::size_t>(i)] *
               lambda[static_cast<std::size_t>((i + 1) % n)];
    }
    if (best.empty() || value > best_value) {
      best = lambda;
      best_value = value;
    }
  }
  return make_deterministic(best);
}

}  // namespace ctxrt
