#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "ctxrt/behavior.hpp"
#include "ctxrt/error.hpp"
#include "ctxrt/ncycle.hpp"
#include "ctxrt/scenario.hpp"
#include "support/generators.hpp"

using namespace ctxrt;
using ctxrt::testing::ratio;

namespace {

Scenario dichotomic(std::size_t m, std::vector<std::vector<std::size_t>> contexts) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("M" + std::to_string(i));
  return Scenario(names, std::move(contexts), {"+1", "-1"});
}

CompatibilityGraph graph(std::size_t v, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  CompatibilityGraph g;
  g.vertices = v;
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

// Brute force: every vertex subset whose induced subgraph is 2-regular and
// connected with at least 4 vertices is an induced cycle.
std::size_t brute_force_induced_cycles(const CompatibilityGraph& g) {
  std::size_t count = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << g.vertices); ++mask) {
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < g.vertices; ++v) {
      if (mask >> v & 1) vs.push_back(v);
    }
    if (vs.size() < 4) continue;
    bool regular = true;
    for (auto v : vs) {
      int deg = 0;
      for (auto w : vs) deg += (v != w && g.adjacent(v, w)) ? 1 : 0;
      regular = regular && deg == 2;
    }
    if (!regular) continue;
    std::set<std::size_t> reached{vs[0]};
    std::vector<std::size_t> stack{vs[0]};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : vs) {
        if (g.adjacent(v, w) && reached.insert(w).second) stack.push_back(w);
      }
    }
    if (reached.size() == vs.size()) ++count;
  }
  return count;
}

Behavior two_context(const RationalVector& t01, const RationalVector& t12) {
  return Behavior(dichotomic(3, {{0, 1}, {1, 2}}), {t01, t12});
}

}  // namespace

TEST(Scenario, CycleContexts) {
  auto s = make_cycle_scenario(4);
  std::vector<std::vector<std::size_t>> expected{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  EXPECT_EQ(s.contexts(), expected);
  EXPECT_EQ(make_cycle_scenario(3).context_count(), 3u);
  EXPECT_EQ(cycle_length(make_cycle_scenario(5)), 5);
  EXPECT_EQ(compatibility_graph(make_cycle_scenario(3)).edges.size(), 3u);
  EXPECT_THROW(make_cycle_scenario(2), InputError);
}

TEST(Scenario, ValidationRejectsBadInput) {
  EXPECT_THROW(dichotomic(2, {{0, 2}}), InputError);
  EXPECT_THROW(dichotomic(2, {{0, 0}}), InputError);
  EXPECT_THROW(Scenario({"A", "A"}, {{0, 1}}, {"+1", "-1"}), InputError);
  EXPECT_THROW(Scenario({"A"}, {{0}}, {"x"}), InputError);
}

TEST(Scenario, CompatibilityGraphs) {
  auto cyc = compatibility_graph(make_cycle_scenario(4));
  EXPECT_EQ(cyc.edges.size(), 4u);
  EXPECT_TRUE(cyc.adjacent(3, 0));
  auto tri = compatibility_graph(dichotomic(3, {{0, 1, 2}}));
  EXPECT_EQ(tri.edges.size(), 3u);
  auto disjoint = compatibility_graph(dichotomic(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(disjoint.edges.size(), 2u);
  EXPECT_FALSE(disjoint.adjacent(1, 2));
}

TEST(Scenario, InducedCycles) {
  auto c5 = compatibility_graph(make_cycle_scenario(5));
  auto cycles = find_induced_cycles(c5);
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0], (std::vector<std::size_t>{0, 1, 2, 3, 4}));

  auto chord = graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  EXPECT_TRUE(find_induced_cycles(chord).empty());

  auto pendant = graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}});
  EXPECT_EQ(find_induced_cycles(pendant).size(), 1u);
  EXPECT_EQ(brute_force_induced_cycles(pendant), 1u);
  EXPECT_TRUE(is_induced_cycle(pendant, {0, 1, 2, 3}));
  EXPECT_TRUE(is_induced_cycle(pendant, {2, 1, 0, 3}));
  EXPECT_FALSE(is_induced_cycle(chord, {0, 1, 2, 3}));
}

TEST(Scenario, InducedCyclesMatchBruteForceOnRandomGraphs) {
  ctxrt::testing::Rng rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t v = 4 + trial % 7;
    CompatibilityGraph g;
    g.vertices = v;
    for (std::size_t a = 0; a < v; ++a) {
      for (std::size_t b = a + 1; b < v; ++b) {
        if (rng() % 100 < 35) g.add_edge(a, b);
      }
    }
    auto found = find_induced_cycles(g);
    ASSERT_EQ(found.size(), brute_force_induced_cycles(g)) << "trial " << trial;
    for (const auto& c : found) {
      EXPECT_TRUE(is_induced_cycle(g, c));
      EXPECT_EQ(c[0], *std::min_element(c.begin(), c.end()));
      EXPECT_LT(c[1], c.back());
    }
  }
}

TEST(Scenario, QuantumContextualityAdmission) {
  EXPECT_TRUE(admits_quantum_contextuality(make_cycle_scenario(4)));
  EXPECT_FALSE(admits_quantum_contextuality(make_cycle_scenario(3)));
  EXPECT_FALSE(admits_quantum_contextuality(dichotomic(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}})));
}

TEST(Scenario, JsonRoundTrip) {
  auto s = make_cycle_scenario(5);
  EXPECT_EQ(scenario_from_json(to_json(s)), s);
  EXPECT_THROW(scenario_from_json(nlohmann::json::parse(R"({"measurements":["A"]})")), InputError);
}

TEST(Behavior, Validation) {
  EXPECT_TRUE(validate(make_maximally_mixed(4)).ok);
  auto short_mass = two_context({ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(3, 20)},
                                {ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)});
  auto r = validate(short_mass);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.context, 0u);
  auto negative = two_context({ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)},
                              {ratio(-1, 4), ratio(1, 2), ratio(1, 2), ratio(1, 4)});
  EXPECT_FALSE(validate(negative).ok);
  EXPECT_EQ(validate(negative).context, 1u);
  EXPECT_THROW(Behavior(make_cycle_scenario(4), {RationalVector(4)}), InputError);
}

TEST(Behavior, NonDisturbance) {
  EXPECT_TRUE(is_nondisturbing(make_pr(OmegaFunctional({-1, 1, 1, 1}))).nondisturbing);
  // product of single-measurement distributions
  Rational p0 = ratio(7, 10), p1 = ratio(1, 5), p2 = ratio(3, 5);
  auto prod = [](const Rational& a, const Rational& b) {
    return RationalVector{a * b, a * (1 - b), (1 - a) * b, (1 - a) * (1 - b)};
  };
  EXPECT_TRUE(is_nondisturbing(two_context(prod(p0, p1), prod(p1, p2))).nondisturbing);
  // X1 marginal (0.7, 0.3) in context {0,1}, (0.5, 0.5) in {1,2}
  auto mismatch = two_context({ratio(7, 20), ratio(3, 20), ratio(7, 20), ratio(3, 20)},
                              {ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)});
  auto r = is_nondisturbing(mismatch);
  EXPECT_FALSE(r.nondisturbing);
  ASSERT_TRUE(r.contexts.has_value());
  EXPECT_EQ(r.overlap, (std::vector<std::size_t>{1}));
}

TEST(Behavior, Noncontextuality) {
  auto mixed = is_noncontextual(make_maximally_mixed(4));
  ASSERT_TRUE(mixed.noncontextual);
  EXPECT_EQ(behavior_from_section(make_cycle_scenario(4), *mixed.section), make_maximally_mixed(4));
  auto f = OmegaFunctional::from_index(4, 0);
  EXPECT_FALSE(is_noncontextual(make_pr(f)).noncontextual);
  auto npr = is_noncontextual(make_npr(f));
  ASSERT_TRUE(npr.noncontextual);
  EXPECT_EQ(behavior_from_section(make_cycle_scenario(4), *npr.section), make_npr(f));
  EXPECT_THROW(is_noncontextual(make_maximally_mixed(4), 8), CapacityError);
  auto disturbing = two_context({ratio(7, 20), ratio(3, 20), ratio(7, 20), ratio(3, 20)},
                                {ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)});
  EXPECT_THROW(is_noncontextual(disturbing), PreconditionError);
}

TEST(Behavior, MixEndpointsAndHalving) {
  auto f = OmegaFunctional::from_index(4, 3);
  auto pr = make_pr(f);
  auto mm = make_maximally_mixed(4);
  EXPECT_EQ(mix(pr, mm, 1), pr);
  EXPECT_EQ(mix(pr, mm, 0), mm);
  auto half = mix(pr, mm, ratio(1, 2));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(correlator(half, i, (i + 1) % 4), correlator(pr, i, (i + 1) % 4) / 2);
  }
  EXPECT_THROW(mix(pr, mm, 2), InputError);
  EXPECT_THROW(mix(pr, make_maximally_mixed(5), ratio(1, 2)), InputError);
}

TEST(Behavior, Correlators) {
  auto corr = two_context({ratio(1, 2), 0, 0, ratio(1, 2)}, {ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)});
  EXPECT_EQ(correlator(corr, 0, 1), 1);
  EXPECT_EQ(correlator(corr, 1, 2), 0);
  auto hand = two_context({ratio(1, 2), ratio(1, 4), 0, ratio(1, 4)}, {ratio(3, 8), ratio(3, 8), ratio(1, 8), ratio(1, 8)});
  EXPECT_EQ(correlator(hand, 0, 1), ratio(1, 2));
  EXPECT_EQ(single_marginal(hand, 0), ratio(1, 2));
  EXPECT_EQ(single_marginal(hand, 1), 0);
}

TEST(Behavior, CorrelationRoundTrip) {
  ctxrt::testing::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 4 + trial % 3;
    auto b = ctxrt::testing::random_nd(rng, n);
    EXPECT_EQ(from_correlations(n, to_correlations(b)), b);
  }
}

TEST(Behavior, JsonRoundTripAndSparseTables) {
  auto b = make_npr(OmegaFunctional::from_index(5, 2));
  EXPECT_EQ(behavior_from_json(to_json(b)), b);
  auto j = to_json(make_pr(OmegaFunctional::from_index(4, 0)));
  for (auto& [key, table] : j["tables"].items()) {
    for (auto it = table.begin(); it != table.end();) {
      it = (*it == "0") ? table.erase(it) : std::next(it);
    }
  }
  EXPECT_EQ(behavior_from_json(j), make_pr(OmegaFunctional::from_index(4, 0)));
  auto missing = to_json(b);
  missing["tables"].erase("0");
  EXPECT_THROW(behavior_from_json(missing), InputError);
  auto bad_label = to_json(b);
  bad_label["tables"]["0"]["+1,0"] = "1/2";
  EXPECT_THROW(behavior_from_json(bad_label), InputError);
  EXPECT_EQ(outcome_string(b.scenario(), 0, 1), "+1,-1");
}
