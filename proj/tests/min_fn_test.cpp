#include <gtest/gtest.h>

#include <algorithm>

#include "lampwalk/errors.hpp"
#include "lampwalk/min_fn.hpp"
#include "test_support.hpp"

namespace lampwalk {
namespace {

using testing::ConfigGen;
using testing::shared_graph;

const Dyadic kChild = act(Letter::a, root_point());

TEST(MinFn, Values) {
  SetFn f = minfun(canonical_phi_u(shared_graph()));
  EXPECT_EQ(f(Config{}), 4);
  EXPECT_EQ(f(Config({kChild})), 2);
  EXPECT_EQ(f(Config({root_point(), kChild})), 2);
  EXPECT_TRUE(max_at_root_on_probe(canonical_phi_u(shared_graph())));
}

TEST(MinFn, TOperatorNeverIncreases) {
  ConfigGen gen(21);
  std::vector<SetFn> fs = {minfun(canonical_phi_u(shared_graph())), minfun(phi_ramp(shared_graph())),
                           minfun(phi_family(shared_graph(), 2))};
  const Rational alphas[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (int t = 0; t < 10000; ++t) {
    Config e = gen.nonempty_config();
    const SetFn& f = fs[static_cast<std::size_t>(t) % fs.size()];
    const Rational& alpha = alphas[static_cast<std::size_t>(t / 3) % 3];
    ASSERT_LE(T_operator(f, e, alpha), f(e)) << f.name << " " << e.str();
    ASSERT_EQ(f(apply_letter(e, Letter::s)), f(e));
  }
}

TEST(MinFn, TOperatorOnConstants) {
  SetFn c{"const", [](const Config&) { return Rational(7, 3); }};
  EXPECT_EQ(T_operator(c, Config({kChild}), Rational(1, 3)), Rational(7, 3));
  EXPECT_THROW(T_operator(c, Config{}, Rational(1)), PreconditionFailed);
}

TEST(MinFn, TransferOfAViolation) {
  VertexFn phi = canonical_phi_u(shared_graph());
  Dyadic q = act(Letter::b, kChild);
  VertexFn bad = perturbed(phi, q, Rational(1, 4));
  // Neighbors of q average 1 (one parent at 2, two children at 1/2, one hair at 1).
  TransferReport rep = non_superharmonic_transfer(bad, q);
  EXPECT_EQ(rep.phi_margin, Rational(1, 4) - 1);
  EXPECT_EQ(rep.set_margin, Rational(4, 5) * rep.phi_margin);
  EXPECT_EQ(rep.t_margin, rep.phi_margin / 2);
  EXPECT_TRUE(rep.violated());
  // 4φ(q) < sum of neighbor values.
  Rational nb = 0;
  for (Letter g : kMoves) nb += bad(act(g, q));
  EXPECT_LT(4 * bad(q), nb);
  EXPECT_THROW(non_superharmonic_transfer(phi, q), PreconditionFailed);
}

TEST(MinFn, MinsRatioBound) {
  ConfigGen gen(31);
  for (int t = 0; t < 10000; ++t) {
    int k = gen.uniform(1, 6);
    Rational alpha(gen.uniform(1, 50), 10), beta = alpha + Rational(gen.uniform(1, 50), 10);
    std::vector<Rational> a, b;
    for (int i = 0; i < k; ++i) {
      Rational bi(gen.uniform(1, 1000), gen.uniform(1, 1000));
      // ratio strictly inside (alpha, beta)
      Rational ratio = alpha + (beta - alpha) * Rational(gen.uniform(1, 999), 1000);
      a.push_back(ratio * bi);
      b.push_back(bi);
    }
    Rational r = *std::min_element(a.begin(), a.end()) / *std::min_element(b.begin(), b.end());
    ASSERT_GT(r, alpha);
    ASSERT_LT(r, beta);
  }
}

TEST(WeightedSum, SuperharmonicAndValues) {
  auto g = shared_graph();
  SetFn f1 = minfun(canonical_phi_u(g)), f2 = minfun(phi_ramp(g));
  SetFn s = weighted_sum({f1, f2}, {Rational(1, 3), Rational(2)});
  EXPECT_EQ(s(Config{}), Rational(4, 3) + 2);
  SetFn id = weighted_sum({f1}, {Rational(1)});
  ConfigGen gen(41);
  for (int t = 0; t < 300; ++t) {
    Config e = gen.config();
    EXPECT_EQ(id(e), f1(e));
    EXPECT_LE(markov_apply_set(s, e), s(e)) << e.str();
  }
  EXPECT_THROW(weighted_sum({f1}, {Rational(-1)}), PreconditionFailed);
}

TEST(CountableSum, TailBoundAndCertificate) {
  EXPECT_EQ(phi_family_tail_bound(pow2(-20)), 21);
  EXPECT_EQ(phi_family_tail_bound(Rational(3, 4)), 1);
  auto g = shared_graph();
  CountableSum coarse = phi_family_sum(g, pow2(-8));
  CountableSum fine = phi_family_sum(g, pow2(-16));
  EXPECT_EQ(coarse.terms, 10);
  ConfigGen gen(51);
  for (int t = 0; t < 200; ++t) {
    Config e = gen.config(4, 9, 4);
    Rational c = coarse.fn(e), f = fine.fn(e);
    EXPECT_GT(c, 0);
    EXPECT_LT(f, 2);
    EXPECT_LE(c, f);
    EXPECT_LT(f - c, coarse.error_bound);
  }
  EXPECT_THROW(countable_sum([g](int i) { return phi_family(g, i); }, pow2(-4), TailBound{}), MissingTailBound);
}

TEST(MarkovImage, PowersAndSuperharmonicity) {
  SetFn f = minfun(canonical_phi_u(shared_graph()));
  SetFn p0 = markov_image(f, 0), p2 = markov_image(f, 2);
  SetFn mix = weighted_sum({markov_image(f, 1), p2}, {Rational(1), Rational(1, 2)});
  ConfigGen gen(61);
  for (int t = 0; t < 60; ++t) {
    Config e = gen.config(3, 5, 3);
    EXPECT_EQ(p0(e), f(e));
    EXPECT_EQ(p2(e), markov_iterate(f, e, 2));
    EXPECT_LE(markov_apply_set(p2, e), p2(e));
    EXPECT_LE(markov_apply_set(mix, e), mix(e));
  }
  EXPECT_THROW(markov_image(f, kMarkovIterateCap + 1), CapExceeded);
}

TEST(RFamily, KMeanShapes) {
  std::vector<Rational> x = {Rational(1, 2), Rational(1, 4), Rational(1), Rational(3, 4)};
  EXPECT_EQ(r_family_kmean(1, 4)(x), Rational(1, 4));
  EXPECT_EQ(r_family_kmean(2, 4)(x), Rational(3, 8));
  EXPECT_EQ(r_family_kmean(4, 4)(x), Rational(5, 8));
  EXPECT_THROW(r_family_kmean(0, 3), PreconditionFailed);
  for (int m = 1; m <= 5; ++m)
    for (int k = 1; k <= m; ++k) EXPECT_TRUE(self_test(r_family_kmean(k, m)).pass()) << k << " " << m;
}

TEST(RFamily, LipschitzAlongCoordinates) {
  // |r(x) - r(y)| <= max_i |x_i - y_i|.
  ConfigGen gen(71);
  for (int t = 0; t < 2000; ++t) {
    int m = gen.uniform(1, 5), k = gen.uniform(1, m);
    SymmetricConcaveFn r = r_family_kmean(k, m);
    std::vector<Rational> x, y;
    Rational sup = 0;
    for (int i = 0; i < m; ++i) {
      x.emplace_back(gen.uniform(1, 256), 256);
      y.emplace_back(gen.uniform(1, 256), 256);
      sup = std::max(sup, Rational(abs(x.back() - y.back())));
    }
    ASSERT_LE(Rational(abs(r(x) - r(y))), sup);
  }
}

TEST(RFamily, RejectsNonConcave) {
  SymmetricConcaveFn sq{"sq", 2, [](const std::vector<Rational>& x) { return x[0] * x[0] + x[1] * x[1]; }};
  EXPECT_FALSE(self_test(sq).pass());
  EXPECT_THROW(generalized_minfun(sq, canonical_phi_u(shared_graph())), PropertySelfTestFailed);
  SymmetricConcaveFn first{"first", 2, [](const std::vector<Rational>& x) { return x[0]; }};
  EXPECT_GT(self_test(first).symmetry_failures, 0u);
}

TEST(GeneralizedMinFn, KMeanOfOneIsTheMinFunction) {
  auto g = shared_graph();
  for (VertexFn phi : {canonical_phi_u(g), phi_ramp(g)}) {
    SetFn f = minfun(phi);
    GeneralizedMinFn gm = generalized_minfun(r_family_kmean(1, 3), phi);
    ConfigGen gen(81);
    for (int t = 0; t < 500; ++t) {
      Config e = gen.config();
      ASSERT_EQ(gm.fn(e), f(e)) << e.str();
    }
  }
}

TEST(GeneralizedMinFn, PaddingWithOne) {
  VertexFn phi = canonical_phi_u(shared_graph());
  GeneralizedMinFn gm = generalized_minfun(r_family_kmean(2, 2), phi);
  EXPECT_EQ(gm.normalization, 4);
  // (φ(x)/4 + 1)/2, rescaled by 4
  EXPECT_EQ(gm.fn(Config({kChild})), 3);
  EXPECT_EQ(gm.fn(Config{}), 4);
}

TEST(GeneralizedMinFn, SuperharmonicAndSwitchInvariant) {
  auto g = shared_graph();
  GeneralizedMinFn gm = generalized_minfun(r_family_kmean(2, 3), canonical_phi_u(g));
  ConfigGen gen(91);
  for (int t = 0; t < 10000; ++t) {
    Config e = gen.config(5, 7, 5);
    Rational v = gm.fn(e);
    ASSERT_EQ(gm.fn(apply_letter(e, Letter::s)), v) << e.str();
    ASSERT_LE(markov_apply_set(gm.fn, e), v) << e.str();
  }
}

}  // namespace
}  // namespace lampwalk

namespace lampwalk {
namespace {

TEST(CountableSum, ClosedFormMatchesTermByTermSum) {
  auto g = testing::shared_graph();
  for (int k : {3, 10, 24}) {
    Rational eps = pow2(-k);
    CountableSum fast = phi_family_sum(g, eps);
    CountableSum slow = countable_sum([g](int i) { return phi_family(g, i); }, eps, phi_family_tail_bound);
    EXPECT_EQ(fast.terms, slow.terms);
    testing::ConfigGen gen(static_cast<std::uint64_t>(k));
    for (int t = 0; t < 300; ++t) {
      Config e = gen.config(5, 12, 4);
      ASSERT_EQ(fast.fn(e), slow.fn(e)) << e.str();
    }
  }
}

}  // namespace
}  // namespace lampwalk
