#include <gtest/gtest.h>

#include "ctxrt/error.hpp"
#include "ctxrt/preorder.hpp"
#include "support/generators.hpp"

using namespace ctxrt;
using ctxrt::testing::ratio;

namespace {

std::size_t count_kind(const PropertyDemo& d, Claim::Kind k) {
  std::size_t c = 0;
  for (const auto& claim : d.claims) c += claim.kind == k ? 1 : 0;
  return c;
}

const Claim* find_claim(const PropertyDemo& d, Claim::Kind k, std::size_t lhs, std::size_t rhs) {
  for (const auto& c : d.claims) {
    if (c.kind == k && c.lhs == lhs && c.rhs == rhs) return &c;
  }
  return nullptr;
}

Scenario c4_plus_pendant() {
  return Scenario({"X0", "X1", "X2", "X3", "Y"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}}, {"+1", "-1"});
}

}  // namespace

TEST(Preorder, NotTotal) {
  auto d = demo_not_total(4);
  ASSERT_TRUE(d.certified());
  ASSERT_EQ(d.witnesses.size(), 2u);
  auto* pair = find_claim(d, Claim::Kind::monotone_pair, 0, 1);
  ASSERT_NE(pair, nullptr);
  EXPECT_EQ(pair->npr_lhs.value, 4);
  EXPECT_EQ(pair->omega_lhs.value, ratio(5, 2));
  EXPECT_EQ(pair->npr_rhs.value, 3);
  EXPECT_EQ(pair->omega_rhs.value, 3);
  EXPECT_NE(find_claim(d, Claim::Kind::not_convertible, 0, 1), nullptr);
  EXPECT_NE(find_claim(d, Claim::Kind::not_convertible, 1, 0), nullptr);
  EXPECT_TRUE(verify_demo(d).ok);
  ASSERT_TRUE(d.erratum.has_value());
  EXPECT_EQ(d.erratum->at("status"), "paper-erratum");
}

TEST(Preorder, NotWeak) {
  auto d = demo_not_weak(4);
  ASSERT_TRUE(d.certified());
  auto* ac = find_claim(d, Claim::Kind::monotone_pair, 0, 2);
  ASSERT_NE(ac, nullptr);
  EXPECT_EQ(ac->npr_rhs.value, 3);
  EXPECT_EQ(ac->omega_rhs.value, ratio(11, 4));
  EXPECT_EQ(count_kind(d, Claim::Kind::not_convertible), 4u);
  EXPECT_NE(find_claim(d, Claim::Kind::convertible, 1, 2), nullptr);
  auto f = OmegaFunctional::from_index(4, 0);
  EXPECT_EQ(d.witnesses[2].behavior, mix(canonical_bbb(f), d.witnesses[1].behavior, ratio(1, 4)));
  EXPECT_TRUE(verify_demo(d).ok);
}

TEST(Preorder, Chain) {
  std::vector<Rational> grid{0, ratio(1, 4), ratio(1, 2), ratio(3, 4), 1};
  auto d = demo_chain(4, grid);
  ASSERT_TRUE(d.certified());
  EXPECT_EQ(d.property, Property::infinite_height);
  std::vector<Rational> expected{2, ratio(5, 2), 3, ratio(7, 2), 4};
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(m_npr(d.witnesses[i].behavior).value, expected[i]);
  EXPECT_EQ(count_kind(d, Claim::Kind::not_convertible), 4u);
  EXPECT_EQ(count_kind(d, Claim::Kind::convertible), 8u);
  EXPECT_TRUE(verify_demo(d).ok);
  EXPECT_THROW(demo_chain(4, {ratio(1, 2), ratio(1, 4)}), InputError);
  EXPECT_THROW(demo_chain(4, {0, 2}), InputError);
}

TEST(Preorder, Antichain) {
  std::vector<Rational> grid{ratio(11, 20), ratio(13, 20), ratio(3, 4), ratio(17, 20), ratio(19, 20)};
  auto d = demo_antichain(4, grid);
  ASSERT_TRUE(d.certified());
  EXPECT_EQ(count_kind(d, Claim::Kind::monotone_pair), 10u);
  auto* ends = find_claim(d, Claim::Kind::monotone_pair, 0, 4);
  ASSERT_NE(ends, nullptr);
  EXPECT_EQ(ends->npr_lhs.value, ratio(31, 10));
  EXPECT_EQ(ends->npr_rhs.value, ratio(39, 10));
  EXPECT_EQ(ends->omega_lhs.value, ratio(499, 200));
  EXPECT_EQ(ends->omega_rhs.value, ratio(419, 200));
  EXPECT_TRUE(verify_demo(d).ok);
  EXPECT_THROW(demo_antichain(4, {ratio(3, 4), 1}), InputError);
  EXPECT_THROW(demo_antichain(4, {ratio(1, 2), ratio(3, 4)}), InputError);
}

TEST(Preorder, AntichainOmegaDecreasesAlongX) {
  auto f = OmegaFunctional::from_index(4, 0);
  Rational prev = 100;
  for (int k = 11; k < 20; ++k) {
    Rational x = ratio(k, 20);
    Rational v = m_omega(make_b_alpha_gamma(f, x, x)).value;
    EXPECT_EQ(v, 2 + 2 * x * (1 - x));
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Preorder, LocallyInfinite) {
  auto d = demo_locally_infinite(4);
  ASSERT_TRUE(d.certified());
  ASSERT_EQ(d.witnesses.size(), 11u);
  for (std::size_t i = 2; i < d.witnesses.size(); ++i) {
    EXPECT_GT(d.witnesses[i].alpha, ratio(1, 4));
    EXPECT_LT(d.witnesses[i].alpha, ratio(3, 4));
  }
  EXPECT_EQ(count_kind(d, Claim::Kind::convertible), 18u);
  EXPECT_EQ(count_kind(d, Claim::Kind::monotone_pair), 36u);
  EXPECT_TRUE(verify_demo(d).ok);
}

TEST(Preorder, VerificationCatchesTampering) {
  auto d = demo_not_weak(4);
  for (auto& c : d.claims) {
    if (c.kind == Claim::Kind::convertible) {
      auto& comps = c.certificate->weights->components;
      comps[0].second = DeterministicWiring::identity(4) == comps[0].second
                            ? enumerate_deterministic(4)->back()
                            : DeterministicWiring::identity(4);
      break;
    }
  }
  EXPECT_FALSE(verify_demo(d).ok);

  auto e = demo_not_total(4);
  e.claims[0].npr_lhs = MonotoneValue::finite(7);
  EXPECT_FALSE(verify_demo(e).ok);
}

TEST(Preorder, PublishedWitnessErratum) {
  for (int n = 4; n <= 6; ++n) {
    auto c = check_published_not_total_witness(n);
    EXPECT_EQ(c.computed_m_omega, n - 1);
    EXPECT_EQ(c.printed_m_omega, n - 3);
    EXPECT_EQ(c.lower_bound, n - 2);
    EXPECT_FALSE(c.printed_consistent);
    EXPECT_LT(c.printed_m_omega, c.lower_bound);
  }
}

TEST(Preorder, PropertyNames) {
  for (auto p : {Property::locally_infinite, Property::not_total, Property::not_weak, Property::infinite_height,
                 Property::infinite_width}) {
    EXPECT_EQ(property_from_string(to_string(p)), p);
  }
  EXPECT_THROW(property_from_string("dense"), InputError);
  EXPECT_THROW(demo_not_total(3), InputError);
}

TEST(Preorder, DemoJson) {
  auto j = to_json(demo_not_total(4, {0, 42}));
  EXPECT_EQ(j.at("property"), "not_total");
  EXPECT_EQ(j.at("n"), 4);
  EXPECT_EQ(j.at("seed"), 42);
  EXPECT_EQ(j.at("witnesses").size(), 2u);
  EXPECT_EQ(j.at("claims")[0].at("kind"), "monotone-pair");
  EXPECT_EQ(j.at("claims")[1].at("kind"), "not-convertible");
  EXPECT_TRUE(j.at("certified").get<bool>());
  EXPECT_EQ(j.dump(), to_json(demo_not_total(4, {0, 42})).dump());
}

TEST(Embedding, PrIntoPendantScenario) {
  auto target = c4_plus_pendant();
  auto pr = make_pr(OmegaFunctional::from_index(4, 0));
  auto e = embed_cycle_behavior(pr, target, {0, 1, 2, 3});
  EXPECT_TRUE(validate(e).ok);
  EXPECT_TRUE(is_nondisturbing(e).nondisturbing);
  EXPECT_FALSE(is_noncontextual(e).noncontextual);
  for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(e.table(c), pr.table(c));
  EXPECT_EQ(e.table(4), (RationalVector{ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)}));
  EXPECT_TRUE(is_noncontextual(embed_cycle_behavior(make_maximally_mixed(4), target, {0, 1, 2, 3})).noncontextual);
}

TEST(Embedding, ReversedAndRotatedCycles) {
  auto target = c4_plus_pendant();
  auto f = OmegaFunctional::from_index(4, 5);
  auto b = make_b_alpha_gamma(f, ratio(3, 4), ratio(1, 3));
  auto e = embed_cycle_behavior(b, target, {2, 1, 0, 3});
  // cycle position i sits on target vertex cycle[i]
  EXPECT_EQ(correlator(e, 2, 1), correlator(b, 0, 1));
  EXPECT_EQ(correlator(e, 3, 2), correlator(b, 3, 0));
  EXPECT_EQ(is_noncontextual(e).noncontextual, is_noncontextual(b).noncontextual);
}

TEST(Embedding, Errors) {
  auto target = c4_plus_pendant();
  auto pr = make_pr(OmegaFunctional::from_index(4, 0));
  EXPECT_THROW(embed_cycle_behavior(pr, target, {0, 1, 2}), InputError);
  EXPECT_THROW(embed_cycle_behavior(pr, target, {0, 1, 3, 2}), InputError);
  EXPECT_THROW(embed_cycle_behavior(pr, target, {0, 1, 2, 4}), InputError);
  Scenario chord({"X0", "X1", "X2", "X3"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}, {"+1", "-1"});
  EXPECT_THROW(embed_cycle_behavior(pr, chord, {0, 1, 2, 3}), InputError);
  Scenario ternary({"X0", "X1", "X2", "X3"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {"+1", "-1", "0"});
  EXPECT_THROW(embed_cycle_behavior(pr, ternary, {0, 1, 2, 3}), InputError);
}
