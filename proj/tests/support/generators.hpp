#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ctxrt/behavior.hpp"
#include "ctxrt/ncycle.hpp"
#include "ctxrt/wiring.hpp"

namespace ctxrt::testing {

using Rng = std::mt19937_64;

inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline std::size_t uniform_index(Rng& rng, std::size_t size) {
  return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

/// k nonnegative rationals summing to one, with denominators dividing the
/// total of k draws from [0, grain].
inline RationalVector random_weights(Rng& rng, std::size_t k, long grain = 12) {
  std::uniform_int_distribution<long> draw(0, grain);
  std::vector<long> raw(k);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& r : raw) total += (r = draw(rng));
  }
  RationalVector w;
  for (long r : raw) w.push_back(ratio(r, total));
  return w;
}

inline Rational random_unit(Rng& rng, long grain = 20) {
  return ratio(std::uniform_int_distribution<long>(0, grain)(rng), grain);
}

inline std::vector<int> random_signs(Rng& rng, int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (auto& s : v) s = (rng() & 1) ? 1 : -1;
  return v;
}

inline Behavior combine(const std::vector<Behavior>& parts, const RationalVector& w) {
  std::vector<RationalVector> tables = parts[0].tables();
  for (auto& t : tables) {
    for (auto& e : t) e = 0;
  }
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (std::size_t c = 0; c < tables.size(); ++c) {
      for (std::size_t e = 0; e < tables[c].size(); ++e) tables[c][e] += w[p] * parts[p].table(c)[e];
    }
  }
  return Behavior(parts[0].scenario_ptr(), std::move(tables));
}

/// Mixture of a few deterministic boxes: always noncontextual.
inline Behavior random_nc(Rng& rng, int n, std::size_t parts = 3) {
  std::vector<Behavior> vs;
  for (std::size_t i = 0; i < parts; ++i) vs.push_back(make_deterministic(random_signs(rng, n)));
  return combine(vs, random_weights(rng, parts));
}

/// Mixture of deterministic boxes and PR boxes on random facets: always
/// non-disturbing, usually contextual.
inline Behavior random_nd(Rng& rng, int n) {
  std::vector<Behavior> vs;
  vs.push_back(make_pr(OmegaFunctional::from_index(n, uniform_index(rng, std::size_t{1} << (n - 1)))));
  if (rng() & 1) vs.push_back(make_pr(OmegaFunctional::from_index(n, uniform_index(rng, std::size_t{1} << (n - 1)))));
  vs.push_back(make_deterministic(random_signs(rng, n)));
  vs.push_back(make_deterministic(random_signs(rng, n)));
  vs.push_back(make_maximally_mixed(n));
  return combine(vs, random_weights(rng, vs.size()));
}

/// Point of Conv(B_PR, B_NPR, B*_bb) for facet f.
inline Behavior random_family_point(Rng& rng, const OmegaFunctional& f) {
  std::vector<Behavior> vs{make_pr(f), make_npr(f), canonical_bbb(f)};
  return combine(vs, random_weights(rng, 3));
}

inline OutcomeMap random_outcome_map(Rng& rng) { return static_cast<OutcomeMap>(uniform_index(rng, 4)); }

/// Uniform over Hom(C_n) x {maps}^n (not over the deduplicated set).
inline DeterministicWiring random_wiring(Rng& rng, int n) {
  static thread_local std::vector<std::vector<std::vector<int>>> homs(16);
  auto& hs = homs.at(static_cast<std::size_t>(n));
  if (hs.empty()) hs = enumerate_homomorphisms(n);
  std::vector<OutcomeMap> g(static_cast<std::size_t>(n));
  for (auto& x : g) x = random_outcome_map(rng);
  return DeterministicWiring(hs[uniform_index(rng, hs.size())], std::move(g));
}

inline WiringMixture random_mixture(Rng& rng, int n, std::size_t parts = 3) {
  WiringMixture m;
  auto w = random_weights(rng, parts);
  for (std::size_t i = 0; i < parts; ++i) m.components.emplace_back(w[i], random_wiring(rng, n));
  return m;
}

}  // namespace ctxrt::testing
