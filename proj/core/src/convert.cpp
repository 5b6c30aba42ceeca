#include "ctxrt/convert.hpp"

#include <map>

#include "ctxrt/error.hpp"
#include "ctxrt/lp.hpp"

namespace ctxrt {

namespace {

int require_nd_cycle(const Behavior& b, const char* role) {
  int n = cycle_length(b.scenario());
  if (n == 0) throw InputError(std::string(role) + " is not an n-cycle behavior");
  if (auto v = validate(b); !v.ok) throw InputError(std::string(role) + " is invalid: " + v.message);
  if (!is_nondisturbing(b).nondisturbing) throw PreconditionError(std::string(role) + " is disturbing");
  return n;
}

RationalVector flatten(const Behavior& b) {
  RationalVector out;
  for (const auto& t : b.tables()) out.insert(out.end(), t.begin(), t.end());
  return out;
}

// Constant-output wiring realizing the deterministic global assignment.
DeterministicWiring constant_wiring(const std::vector<std::size_t>& assignment) {
  const std::size_t n = assignment.size();
  std::vector<int> h(n);
  for (std::size_t j = 0; j < n; ++j) h[j] = static_cast<int>(j);
  std::vector<OutcomeMap> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = assignment[j] == 0 ? OutcomeMap::constant_plus : OutcomeMap::constant_minus;
  return DeterministicWiring(std::move(h), std::move(g));
}

WiringMixture merge(const std::vector<std::pair<Rational, DeterministicWiring>>& parts) {
  std::map<DeterministicWiring, Rational> acc;
  for (const auto& [w, wiring] : parts) {
    if (sgn(w) == 0) continue;
    acc[wiring] += w;
  }
  WiringMixture m;
  for (auto& [wiring, w] : acc) m.components.emplace_back(w, wiring);
  return m;
}

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::convertible ? "convertible" : "not-convertible"; }

std::string to_string(Relation r) {
  switch (r) {
    case Relation::strictly_above: return "strictly_above";
    case Relation::strictly_below: return "strictly_below";
    case Relation::equivalent: return "equivalent";
    case Relation::incomparable: return "incomparable";
  }
  return "?";
}

ImageSet images(const Behavior& b, int cap) {
  const int n = require_nd_cycle(b, "behavior");
  const auto wirings = enumerate_deterministic(n, cap);
  ImageSet out;
  std::map<RationalVector, std::size_t> seen;
  for (const auto& w : *wirings) {
    Behavior image = apply_unchecked(w, b);
    auto key = flatten(image);
    if (seen.emplace(std::move(key), out.behaviors.size()).second) {
      out.behaviors.push_back(std::move(image));
      out.wirings.push_back(w);
    }
  }
  return out;
}

ConversionCertificate can_convert(const Behavior& b1, const Behavior& b2, int cap) {
  const int n1 = require_nd_cycle(b1, "source");
  const int n2 = require_nd_cycle(b2, "target");
  if (n1 != n2) throw InputError("conversion between different cycle lengths is not supported");

  const ImageSet imgs = images(b1, cap);
  const std::size_t cols = imgs.behaviors.size();
  std::vector<RationalVector> columns;
  columns.reserve(cols);
  for (const auto& img : imgs.behaviors) columns.push_back(flatten(img));
  const RationalVector target = flatten(b2);

  lp::LinearProgram program(cols);
  for (std::size_t e = 0; e < target.size(); ++e) {
    RationalVector row(cols);
    for (std::size_t d = 0; d < cols; ++d) row[d] = columns[d][e];
    program.add_eq(std::move(row), target[e]);
  }
  program.add_eq(RationalVector(cols, Rational(1)), Rational(1));

  auto outcome = lp::solve(program);
  ConversionCertificate cert;
  if (!outcome.has_solution()) return cert;
  cert.verdict = Verdict::convertible;
  std::vector<std::pair<Rational, DeterministicWiring>> parts;
  for (std::size_t d = 0; d < cols; ++d) {
    if (sgn(outcome.solution[d]) != 0) parts.emplace_back(outcome.solution[d], imgs.wirings[d]);
  }
  cert.weights = merge(parts);
  return cert;
}

bool verify_certificate(const ConversionCertificate& cert, const Behavior& b1, const Behavior& b2) {
  if (!cert.convertible() || !cert.weights) return false;
  try {
    return apply_mixture(*cert.weights, b1) == b2;
  } catch (const std::exception&) {
    return false;
  }
}

PairClassification classify(const Behavior& b1, const Behavior& b2, int cap) {
  PairClassification pc;
  pc.forward = can_convert(b1, b2, cap);
  pc.backward = can_convert(b2, b1, cap);
  const bool f = pc.forward.convertible();
  const bool b = pc.backward.convertible();
  if (f && b) pc.relation = Relation::equivalent;
  else if (f) pc.relation = Relation::strictly_above;
  else if (b) pc.relation = Relation::strictly_below;
  else pc.relation = Relation::incomparable;
  return pc;
}

ConversionCertificate screened_convert(const Behavior& b1, const Behavior& b2, const OmegaFunctional& f, int cap) {
  const int n1 = require_nd_cycle(b1, "source");
  const int n2 = require_nd_cycle(b2, "target");
  if (n1 != n2 || f.n() != n1) throw InputError("screened conversion needs one common cycle length");
  const Rational boundary(n1 - 2);
  if (!(omega_value(f, b2) > boundary)) {
    throw PreconditionError("screened conversion needs a target strictly violating the facet");
  }

  const ImageSet imgs = images(b1, cap);
  std::vector<std::size_t> screened;
  for (std::size_t d = 0; d < imgs.behaviors.size(); ++d) {
    if (omega_value(f, imgs.behaviors[d]) > boundary) screened.push_back(d);
  }

  // Variables: one weight per screened image, then the 4n entries of the
  // scaled boundary point y = mu * B~ (mu = sum of its first table).
  const std::size_t n = static_cast<std::size_t>(n1);
  const std::size_t k = screened.size();
  const std::size_t vars = k + 4 * n;
  const RationalVector target = flatten(b2);
  std::vector<RationalVector> columns;
  for (std::size_t d : screened) columns.push_back(flatten(imgs.behaviors[d]));

  lp::LinearProgram program(vars);
  for (std::size_t e = 0; e < 4 * n; ++e) {
    RationalVector row(vars, Rational(0));
    for (std::size_t d = 0; d < k; ++d) row[d] = columns[d][e];
    row[k + e] = 1;
    program.add_eq(std::move(row), target[e]);
  }
  {
    // sum of weights + mu = 1, with mu read off the first table of y
    RationalVector row(vars, Rational(0));
    for (std::size_t d = 0; d < k; ++d) row[d] = 1;
    for (std::size_t e = 0; e < 4; ++e) row[k + e] = 1;
    program.add_eq(std::move(row), Rational(1));
  }
  for (std::size_t i = 0; i < n; ++i) {
    // every table of y has the same mass, and y is non-disturbing:
    // marginal of X_{i+1} from context i equals that from context i+1.
    const std::size_t next = (i + 1) % n;
    RationalVector mass(vars, Rational(0));
    for (std::size_t e = 0; e < 4; ++e) {
      mass[k + 4 * i + e] += 1;
      mass[k + 4 * next + e] -= 1;
    }
    program.add_eq(std::move(mass), Rational(0));
    RationalVector nd(vars, Rational(0));
    // context i: (X_i, X_{i+1}); P(X_{i+1} = +) = y[i][++] + y[i][-+]
    nd[k + 4 * i + 0] += 1;
    nd[k + 4 * i + 2] += 1;
    // context i+1: (X_{i+1}, X_{i+2}); P(X_{i+1} = +) = y[i+1][++] + y[i+1][+-]
    nd[k + 4 * next + 0] -= 1;
    nd[k + 4 * next + 1] -= 1;
    program.add_eq(std::move(nd), Rational(0));
  }
  {
    // Omega_f(y) = (n-2) * mu
    RationalVector row(vars, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      const int s = f.signs()[i];
      row[k + 4 * i + 0] += s;
      row[k + 4 * i + 1] -= s;
      row[k + 4 * i + 2] -= s;
      row[k + 4 * i + 3] += s;
    }
    for (std::size_t e = 0; e < 4; ++e) row[k + e] -= boundary;
    program.add_eq(std::move(row), Rational(0));
  }

  auto outcome = lp::solve(program);
  ConversionCertificate cert;
  if (!outcome.has_solution()) return cert;
  cert.verdict = Verdict::convertible;

  std::vector<std::pair<Rational, DeterministicWiring>> parts;
  for (std::size_t d = 0; d < k; ++d) {
    if (sgn(outcome.solution[d]) != 0) parts.emplace_back(outcome.solution[d], imgs.wirings[screened[d]]);
  }
  Rational mu(0);
  for (std::size_t e = 0; e < 4; ++e) mu += outcome.solution[k + e];
  if (sgn(mu) > 0) {
    // The boundary point is noncontextual; realize it by constant wirings.
    std::vector<RationalVector> tables(n, RationalVector(4));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t e = 0; e < 4; ++e) tables[i][e] = outcome.solution[k + 4 * i + e] / mu;
    }
    Behavior boundary_point(b2.scenario_ptr(), std::move(tables));
    auto nc = is_noncontextual(boundary_point);
    if (!nc.noncontextual) throw std::logic_error("screened boundary point is not noncontextual");
    for (const auto& [assignment, w] : nc.section->weights) parts.emplace_back(mu * w, constant_wiring(assignment));
  }
  cert.weights = merge(parts);
  return cert;
}

ConversionCertificate mixing_certificate(const Behavior& b, const Rational& keep, const Behavior& free_part) {
  int n = require_nd_cycle(b, "source");
  if (keep < 0 || keep > 1) throw InputError("mixing weight outside [0,1]");
  auto nc = is_noncontextual(free_part);
  if (!nc.noncontextual) throw PreconditionError("mixing partner is contextual");
  std::vector<std::pair<Rational, DeterministicWiring>> parts;
  parts.emplace_back(keep, DeterministicWiring::identity(n));
  Rational rest = 1 - keep;
  for (const auto& [assignment, w] : nc.section->weights) parts.emplace_back(rest * w, constant_wiring(assignment));
  ConversionCertificate cert;
  cert.verdict = Verdict::convertible;
  cert.weights = merge(parts);
  return cert;
}

nlohmann::json to_json(const ConversionCertificate& cert, const Behavior& lhs, const Behavior& rhs) {
  nlohmann::json weights = nlohmann::json::array();
  if (cert.weights) weights = to_json(*cert.weights).at("components");
  return {{"verdict", to_string(cert.verdict)}, {"weights", weights}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
}

}  // namespace ctxrt
