#include "ctxrt/preorder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ctxrt/error.hpp"

namespace ctxrt {

namespace {

void require_n(int n) {
  if (n < 4) throw InputError("n must be at least 4, got " + std::to_string(n));
}

Witness witness(const std::string& name, const OmegaFunctional& f, const Rational& alpha, const Rational& gamma) {
  return Witness{name, alpha, gamma, make_b_alpha_gamma(f, alpha, gamma)};
}

std::string f_name(const Rational& alpha) { return "F(" + format_rational(alpha) + ")"; }

std::string b_name(const Rational& alpha, const Rational& gamma) {
  return "B(" + format_rational(alpha) + "," + format_rational(gamma) + ")";
}

bool pairing_holds(Claim::Pairing p, const MonotoneValue& a1, const MonotoneValue& a2, const MonotoneValue& b1,
                   const MonotoneValue& b2) {
  if (p == Claim::Pairing::incomparable) return (a1 < a2 && b2 < b1) || (a2 < a1 && b1 < b2);
  return !(a1 == a2) || !(b1 == b2);
}

class DemoBuilder {
 public:
  DemoBuilder(Property p, int n, const DemoOptions& opts) : f_(OmegaFunctional::from_index(n, opts.facet_k)) {
    require_n(n);
    demo_.property = p;
    demo_.n = n;
    demo_.seed = opts.seed;
  }

  const OmegaFunctional& facet() const { return f_; }

  std::size_t add(const std::string& name, const Rational& alpha, const Rational& gamma) {
    demo_.witnesses.push_back(witness(name, f_, alpha, gamma));
    return demo_.witnesses.size() - 1;
  }

  const Behavior& at(std::size_t i) const { return demo_.witnesses[i].behavior; }

  bool convertible(std::size_t lhs, std::size_t rhs, const std::string& note = {}) {
    Claim c;
    c.kind = Claim::Kind::convertible;
    c.lhs = lhs;
    c.rhs = rhs;
    c.note = note;
    auto cert = can_convert(at(lhs), at(rhs));
    c.holds = cert.convertible() && verify_certificate(cert, at(lhs), at(rhs));
    c.certificate = std::move(cert);
    demo_.claims.push_back(std::move(c));
    return demo_.claims.back().holds;
  }

  bool explicit_certificate(std::size_t lhs, std::size_t rhs, ConversionCertificate cert, const std::string& note) {
    Claim c;
    c.kind = Claim::Kind::convertible;
    c.lhs = lhs;
    c.rhs = rhs;
    c.note = note;
    c.holds = verify_certificate(cert, at(lhs), at(rhs));
    c.certificate = std::move(cert);
    demo_.claims.push_back(std::move(c));
    return demo_.claims.back().holds;
  }

  bool not_convertible(std::size_t lhs, std::size_t rhs, const std::string& note = {}) {
    Claim c;
    c.kind = Claim::Kind::not_convertible;
    c.lhs = lhs;
    c.rhs = rhs;
    c.note = note;
    c.holds = !can_convert(at(lhs), at(rhs)).convertible();
    demo_.claims.push_back(std::move(c));
    return demo_.claims.back().holds;
  }

  bool monotone_pair(std::size_t lhs, std::size_t rhs, Claim::Pairing p) {
    Claim c;
    c.kind = Claim::Kind::monotone_pair;
    c.lhs = lhs;
    c.rhs = rhs;
    c.pairing = p;
    c.npr_lhs = npr(lhs);
    c.npr_rhs = npr(rhs);
    c.omega_lhs = omega(lhs);
    c.omega_rhs = omega(rhs);
    c.holds = pairing_holds(p, c.npr_lhs, c.npr_rhs, c.omega_lhs, c.omega_rhs);
    demo_.claims.push_back(std::move(c));
    return demo_.claims.back().holds;
  }

  MonotoneValue npr(std::size_t i) {
    auto it = npr_.find(i);
    if (it == npr_.end()) it = npr_.emplace(i, m_npr(at(i))).first;
    return it->second;
  }

  MonotoneValue omega(std::size_t i) {
    auto it = omega_.find(i);
    if (it == omega_.end()) it = omega_.emplace(i, m_omega(at(i))).first;
    return it->second;
  }

  void conclude(std::string s) { demo_.conclusions.push_back(std::move(s)); }
  void erratum(nlohmann::json j) { demo_.erratum = std::move(j); }

  PropertyDemo take() { return std::move(demo_); }

 private:
  OmegaFunctional f_;
  PropertyDemo demo_;
  std::map<std::size_t, MonotoneValue> npr_;
  std::map<std::size_t, MonotoneValue> omega_;
};

nlohmann::json monotone_pair_json(const MonotoneValue& npr, const MonotoneValue& omega) {
  return {{"M_NPR", npr.to_string()}, {"M_Omega", omega.to_string()}};
}

}  // namespace

std::string to_string(Property p) {
  switch (p) {
    case Property::locally_infinite: return "locally_infinite";
    case Property::not_total: return "not_total";
    case Property::not_weak: return "not_weak";
    case Property::infinite_height: return "infinite_height";
    case Property::infinite_width: return "infinite_width";
  }
  return "?";
}

Property property_from_string(const std::string& s) {
  for (auto p : {Property::locally_infinite, Property::not_total, Property::not_weak, Property::infinite_height,
                 Property::infinite_width}) {
    if (to_string(p) == s) return p;
  }
  throw InputError("unknown property '" + s + "'");
}

bool PropertyDemo::certified() const {
  for (const auto& c : claims) {
    if (!c.holds) return false;
  }
  return !claims.empty();
}

PropertyDemo demo_not_total(int n, const DemoOptions& opts) {
  DemoBuilder d(Property::not_total, n, opts);
  auto a = d.add("A", 1, Rational(3, 4));
  auto b = d.add("B", Rational(1, 2), 0);
  bool ok = d.monotone_pair(a, b, Claim::Pairing::incomparable);
  ok = d.not_convertible(a, b) && ok;
  ok = d.not_convertible(b, a) && ok;
  if (ok) d.conclude("A and B are incomparable, so the pre-order is not total");
  d.erratum(published_witness_record(n, opts.facet_k));
  return d.take();
}

PropertyDemo demo_not_weak(int n, const DemoOptions& opts) {
  DemoBuilder d(Property::not_weak, n, opts);
  auto a = d.add("A", 1, Rational(3, 4));
  auto b = d.add("B", Rational(1, 2), 0);
  auto c = d.add("C", Rational(1, 2), Rational(1, 4));
  bool ok = d.monotone_pair(a, b, Claim::Pairing::incomparable);
  ok = d.monotone_pair(a, c, Claim::Pairing::incomparable) && ok;
  ok = d.not_convertible(a, b) && ok;
  ok = d.not_convertible(b, a) && ok;
  ok = d.not_convertible(a, c) && ok;
  ok = d.not_convertible(c, a) && ok;
  ok = d.explicit_certificate(b, c, mixing_certificate(d.at(b), Rational(3, 4), canonical_bbb(d.facet())),
                              "C = 1/4 B*_bb + 3/4 B") &&
       ok;
  ok = d.convertible(b, c, "LP") && ok;
  if (ok) d.conclude("B and A are incomparable, A and C are incomparable, yet B -> C: incomparability is not transitive");
  d.erratum(published_witness_record(n, opts.facet_k));
  return d.take();
}

PropertyDemo demo_chain(int n, const std::vector<Rational>& grid, const DemoOptions& opts) {
  DemoBuilder d(Property::infinite_height, n, opts);
  if (grid.size() < 2) throw InputError("chain grid needs at least two points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0 || grid[i] > 1) throw InputError("chain grid point outside [0,1]");
    if (i > 0 && !(grid[i - 1] < grid[i])) throw InputError("chain grid must be strictly ascending");
  }
  std::vector<std::size_t> idx;
  for (const auto& alpha : grid) idx.push_back(d.add(f_name(alpha), alpha, 0));
  const Behavior npr = make_npr(d.facet());
  bool ok = true;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    auto lo = idx[i];
    auto hi = idx[i + 1];
    ok = d.convertible(hi, lo, "LP") && ok;
    // F(lo) = (lo/hi) F(hi) + (1 - lo/hi) B_NPR
    Rational keep = grid[i] / grid[i + 1];
    ok = d.explicit_certificate(hi, lo, mixing_certificate(d.at(hi), keep, npr), "mixing with B_NPR") && ok;
    ok = d.not_convertible(lo, hi) && ok;
    ok = d.monotone_pair(lo, hi, Claim::Pairing::inequivalent) && ok;
    ok = d.npr(lo) < d.npr(hi) && ok;
  }
  if (ok) {
    d.conclude("F(alpha) is a strict chain on the grid with M_NPR strictly increasing in alpha");
    d.conclude("alpha -> F(alpha) is injective on [0,1], so the height is infinite");
  }
  return d.take();
}

PropertyDemo demo_antichain(int n, const std::vector<Rational>& grid, const DemoOptions& opts) {
  DemoBuilder d(Property::infinite_width, n, opts);
  if (grid.size() < 2) throw InputError("antichain grid needs at least two points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= Rational(1, 2) || grid[i] >= 1) {
      throw InputError("antichain grid point " + format_rational(grid[i]) + " outside (1/2, 1); B(1,1) is free");
    }
    if (i > 0 && !(grid[i - 1] < grid[i])) throw InputError("antichain grid must be strictly ascending");
  }
  std::vector<std::size_t> idx;
  for (const auto& x : grid) idx.push_back(d.add(b_name(x, x), x, x));
  bool ok = true;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      ok = d.monotone_pair(idx[i], idx[j], Claim::Pairing::incomparable) && ok;
    }
  }
  ok = d.not_convertible(idx.front(), idx.back(), "LP spot check") && ok;
  ok = d.not_convertible(idx.back(), idx.front(), "LP spot check") && ok;
  if (ok) {
    d.conclude("B(x,x) on the grid is pairwise incomparable");
    d.conclude("M_NPR increases and M_Omega decreases strictly along x in (1/2,1), so the width is infinite");
  }
  return d.take();
}

PropertyDemo demo_locally_infinite(int n, std::size_t samples, const DemoOptions& opts) {
  DemoBuilder d(Property::locally_infinite, n, opts);
  if (samples == 0) throw InputError("need at least one sample");
  const Rational low(1, 4);
  const Rational high(3, 4);
  auto top = d.add(f_name(high), high, 0);
  auto bottom = d.add(f_name(low), low, 0);
  std::vector<std::size_t> inner;
  for (std::size_t i = 1; i <= samples; ++i) {
    Rational step(static_cast<long>(i), static_cast<long>(samples + 1));
    step.canonicalize();
    Rational alpha = low + (high - low) * step;
    inner.push_back(d.add(f_name(alpha), alpha, 0));
  }
  bool ok = true;
  for (auto i : inner) {
    ok = d.convertible(top, i) && ok;
    ok = d.convertible(i, bottom) && ok;
  }
  for (std::size_t i = 0; i < inner.size(); ++i) {
    for (std::size_t j = i + 1; j < inner.size(); ++j) {
      ok = d.monotone_pair(inner[i], inner[j], Claim::Pairing::inequivalent) && ok;
    }
  }
  if (ok) {
    d.conclude("every sample lies in the interval [F(1/4), F(3/4)] and the samples are pairwise inequivalent");
    d.conclude("alpha -> F(alpha) injects (1/4,3/4) into the interval, so it is infinite");
  }
  return d.take();
}

DemoVerification verify_demo(const PropertyDemo& demo) {
  DemoVerification out;
  auto fail = [&](std::size_t k, const std::string& why) {
    out.ok = false;
    out.failures.push_back("claim " + std::to_string(k) + ": " + why);
  };
  for (std::size_t k = 0; k < demo.claims.size(); ++k) {
    const auto& c = demo.claims[k];
    if (c.lhs >= demo.witnesses.size() || c.rhs >= demo.witnesses.size()) {
      fail(k, "witness index out of range");
      continue;
    }
    const Behavior& lhs = demo.witnesses[c.lhs].behavior;
    const Behavior& rhs = demo.witnesses[c.rhs].behavior;
    switch (c.kind) {
      case Claim::Kind::convertible:
        if (!c.certificate || !verify_certificate(*c.certificate, lhs, rhs)) fail(k, "certificate does not re-verify");
        break;
      case Claim::Kind::not_convertible:
        if (can_convert(lhs, rhs).convertible()) fail(k, "refutation failed: LP is feasible");
        break;
      case Claim::Kind::monotone_pair: {
        auto a1 = m_npr(lhs), a2 = m_npr(rhs), b1 = m_omega(lhs), b2 = m_omega(rhs);
        if (!(a1 == c.npr_lhs) || !(a2 == c.npr_rhs) || !(b1 == c.omega_lhs) || !(b2 == c.omega_rhs)) {
          fail(k, "recorded monotone values differ from recomputation");
        } else if (!pairing_holds(c.pairing, a1, a2, b1, b2)) {
          fail(k, "monotone values do not witness the pairing");
        }
        break;
      }
    }
  }
  if (demo.claims.empty()) {
    out.ok = false;
    out.failures.push_back("demo has no claims");
  }
  return out;
}

PublishedWitnessCheck check_published_not_total_witness(int n, std::size_t facet_k) {
  require_n(n);
  auto f = OmegaFunctional::from_index(n, facet_k);
  PublishedWitnessCheck out;
  out.n = n;
  auto v = m_omega(make_b_alpha_gamma(f, 1, Rational(1, 2)));
  out.computed_m_omega = v.value;
  out.printed_m_omega = n - 3;
  out.lower_bound = n - 2;
  out.printed_consistent = out.computed_m_omega == out.printed_m_omega;
  return out;
}

nlohmann::json published_witness_record(int n, std::size_t facet_k) {
  require_n(n);
  auto f = OmegaFunctional::from_index(n, facet_k);
  auto check = check_published_not_total_witness(n, facet_k);
  auto describe = [&](const Rational& alpha, const Rational& gamma) {
    auto b = make_b_alpha_gamma(f, alpha, gamma);
    auto j = monotone_pair_json(m_npr(b), m_omega(b));
    j["name"] = b_name(alpha, gamma);
    j["free"] = is_noncontextual(b).noncontextual;
    return j;
  };
  auto b00 = make_b_alpha_gamma(f, 0, 0);
  auto b1h = make_b_alpha_gamma(f, 1, Rational(1, 2));
  nlohmann::json j;
  j["status"] = "paper-erratum";
  j["not_total_literal"] = nlohmann::json::array({describe(0, 0), describe(1, Rational(1, 2))});
  j["not_weak_literal"] = nlohmann::json::array(
      {describe(0, 0), describe(Rational(1, 2), Rational(1, 2)), describe(Rational(1, 2), Rational(3, 4))});
  j["printed_M_Omega_B(1,1/2)"] = format_rational(check.printed_m_omega);
  j["computed_M_Omega_B(1,1/2)"] = format_rational(check.computed_m_omega);
  j["M_Omega_lower_bound"] = format_rational(check.lower_bound);
  j["B(1,1/2) -> B(0,0)"] = to_string(can_convert(b1h, b00).verdict);
  j["resolution"] =
      "B(0,0) is free and reachable from every behavior, so the literal pairs are comparable; "
      "corrected witnesses are used instead";
  return j;
}

Behavior embed_cycle_behavior(const Behavior& b, const Scenario& target, const std::vector<std::size_t>& cycle) {
  const int n = cycle_length(b.scenario());
  if (n == 0) throw InputError("source behavior is not on an n-cycle scenario");
  if (cycle.size() != static_cast<std::size_t>(n)) {
    throw InputError("cycle has length " + std::to_string(cycle.size()) + ", behavior needs " + std::to_string(n));
  }
  for (auto v : cycle) {
    if (v >= target.measurement_count()) throw InputError("cycle vertex out of range");
  }
  if (!is_induced_cycle(compatibility_graph(target), cycle)) throw InputError("cycle is not induced in the target");
  if (!is_nondisturbing(b).nondisturbing) throw PreconditionError("source behavior is disturbing");

  // Map target outcome index -> source outcome index by label.
  const auto& src_out = b.scenario().outcomes();
  const auto& dst_out = target.outcomes();
  if (dst_out.size() != 2) throw InputError("target outcomes must be dichotomic");
  std::vector<std::size_t> to_src(2);
  for (std::size_t o = 0; o < 2; ++o) {
    auto it = std::find(src_out.begin(), src_out.end(), dst_out[o]);
    if (it == src_out.end()) throw InputError("target outcome '" + dst_out[o] + "' is not +1/-1");
    to_src[o] = static_cast<std::size_t>(it - src_out.begin());
  }
  if (to_src[0] == to_src[1]) throw InputError("target outcomes must be distinct");

  std::vector<std::size_t> position(target.measurement_count(), Scenario::npos);
  for (std::size_t i = 0; i < cycle.size(); ++i) position[cycle[i]] = i;

  const Scenario& src = b.scenario();
  auto pair_probability = [&](std::size_t i, std::size_t oi, std::size_t j, std::size_t oj) -> Rational {
    auto c = src.find_context({i, j});
    if (c != Scenario::npos) return b.probability(c, {oi, oj});
    c = src.find_context({j, i});
    if (c == Scenario::npos) throw InputError("cycle measurements share a target context but are not adjacent");
    return b.probability(c, {oj, oi});
  };
  auto single_probability = [&](std::size_t i, std::size_t oi) -> Rational {
    auto c = src.find_context({i, (i + 1) % static_cast<std::size_t>(n)});
    return b.probability(c, {oi, 0}) + b.probability(c, {oi, 1});
  };

  std::vector<RationalVector> tables;
  for (std::size_t c = 0; c < target.context_count(); ++c) {
    const auto& ms = target.contexts()[c];
    std::vector<std::size_t> on_cycle;
    for (std::size_t p = 0; p < ms.size(); ++p) {
      if (position[ms[p]] != Scenario::npos) on_cycle.push_back(p);
    }
    if (on_cycle.size() > 2) throw InputError("a target context contains three cycle measurements");
    const std::size_t size = target.table_size(c);
    const Rational uniform(1, 1L << (ms.size() - on_cycle.size()));
    RationalVector table(size);
    std::vector<std::size_t> digits(ms.size());
    for (std::size_t e = 0; e < size; ++e) {
      std::size_t rest = e;
      for (std::size_t p = ms.size(); p-- > 0;) {
        digits[p] = rest % 2;
        rest /= 2;
      }
      Rational cyc(1);
      if (on_cycle.size() == 1) {
        auto p = on_cycle[0];
        cyc = single_probability(position[ms[p]], to_src[digits[p]]);
      } else if (on_cycle.size() == 2) {
        auto p = on_cycle[0], q = on_cycle[1];
        cyc = pair_probability(position[ms[p]], to_src[digits[p]], position[ms[q]], to_src[digits[q]]);
      }
      table[e] = cyc * uniform;
    }
    tables.push_back(std::move(table));
  }
  return Behavior(target, std::move(tables));
}

nlohmann::json to_json(const PropertyDemo& demo) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : demo.witnesses) {
    witnesses.push_back({{"name", w.name},
                         {"params", {{"alpha", format_rational(w.alpha)}, {"gamma", format_rational(w.gamma)}}},
                         {"behavior", to_json(w.behavior)}});
  }
  nlohmann::json claims = nlohmann::json::array();
  for (const auto& c : demo.claims) {
    const auto& lhs = demo.witnesses[c.lhs];
    const auto& rhs = demo.witnesses[c.rhs];
    nlohmann::json evidence = {{"lhs", lhs.name}, {"rhs", rhs.name}};
    std::string kind;
    switch (c.kind) {
      case Claim::Kind::convertible: {
        kind = "convertible";
        nlohmann::json weights = nlohmann::json::array();
        if (c.certificate && c.certificate->weights) weights = to_json(*c.certificate->weights).at("components");
        evidence["weights"] = weights;
        break;
      }
      case Claim::Kind::not_convertible:
        kind = "not-convertible";
        evidence["lp"] = "infeasible";
        break;
      case Claim::Kind::monotone_pair:
        kind = "monotone-pair";
        evidence["pairing"] = c.pairing == Claim::Pairing::incomparable ? "incomparable" : "inequivalent";
        evidence["lhs_values"] = monotone_pair_json(c.npr_lhs, c.omega_lhs);
        evidence["rhs_values"] = monotone_pair_json(c.npr_rhs, c.omega_rhs);
        break;
    }
    if (!c.note.empty()) evidence["note"] = c.note;
    claims.push_back({{"kind", kind}, {"holds", c.holds}, {"evidence", evidence}});
  }
  nlohmann::json j = {{"property", to_string(demo.property)},
                      {"n", demo.n},
                      {"seed", demo.seed},
                      {"witnesses", witnesses},
                      {"claims", claims},
                      {"conclusions", demo.conclusions},
                      {"certified", demo.certified()}};
  if (demo.erratum) j["erratum"] = *demo.erratum;
  return j;
}

}  // namespace ctxrt
