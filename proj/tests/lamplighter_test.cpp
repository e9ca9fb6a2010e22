#include <gtest/gtest.h>

#include <set>

#include "lampwalk/min_fn.hpp"
#include "test_support.hpp"

namespace lampwalk {
namespace {

using testing::ConfigGen;
using testing::shared_graph;

// P^n F by summing over all 5^n words, one at a time.
Rational naive_iterate(const SetFn& f, const Config& e, int n) {
  std::vector<Letter> w(static_cast<std::size_t>(n), Letter::a);
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  Rational sum = 0;
  BigInt count = 0;
  while (true) {
    Config c = e;
    for (int d : digits) c = apply_letter(c, kLampLetters[static_cast<std::size_t>(d)]);
    sum += f(c);
    ++count;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == 5) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  EXPECT_EQ(count, ipow(BigInt(5), static_cast<unsigned>(n)));
  return sum / Rational(count);
}

TEST(Config, ParseAndToggle) {
  Config c = parse_config("5/2^3,11/2^4");
  EXPECT_EQ(c.size(), 2u);
  EXPECT_TRUE(c.contains(root_point()));
  EXPECT_EQ(c.toggled(root_point()), parse_config("11/2^4"));
  EXPECT_EQ(parse_config(""), Config{});
  EXPECT_THROW(parse_config("5/2^3,5/2^3"), ParseError);
}

TEST(Lamplighter, OrbitOfEmptyAtLengthOne) {
  auto orbit = orbit_enumerate(Config{}, 1);
  std::set<Config> got;
  for (const auto& o : orbit) got.insert(o.config);
  EXPECT_EQ(got, (std::set<Config>{Config{}, Config({root_point()})}));
  EXPECT_EQ(orbit.back().witness.str(), "s");
}

TEST(Lamplighter, OrbitWitnessesReproduceConfigs) {
  ConfigGen gen(7);
  Config e = gen.nonempty_config(3, 4, 3);
  for (const auto& o : orbit_enumerate(e, 4)) {
    EXPECT_EQ(apply_word(e, o.witness), o.config);
    EXPECT_EQ(static_cast<int>(o.witness.size()), o.depth);
  }
}

TEST(Lamplighter, OrbitCap) {
  EXPECT_THROW(orbit_enumerate(Config({root_point()}), 8, 100), CapExceeded);
}

TEST(Lamplighter, WordsActFromTheRight) {
  ConfigGen gen(11);
  for (int t = 0; t < 200; ++t) {
    Config e = gen.config();
    LampWord u = gen.word(gen.uniform(0, 5)), v = gen.word(gen.uniform(0, 5));
    LampWord uv{u.letters};
    uv.letters.insert(uv.letters.end(), v.letters.begin(), v.letters.end());
    EXPECT_EQ(apply_word(e, uv), apply_word(apply_word(e, v), u));
  }
}

TEST(Lamplighter, GoldenWordLandsInSubtree) {
  const SchreierGraph& g = *shared_graph();
  for (int i = 0; i <= 6; ++i) {
    std::string w = "b" + std::string(static_cast<std::size_t>(i), 'a') + "s";
    Config c = apply_word(Config{}, LampWord::parse(w));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_TRUE(g.in_subtree(i, c.points().front())) << w;
  }
}

TEST(Lamplighter, DynamicProgramMatchesNaiveEnumeration) {
  SetFn f = minfun(canonical_phi_u(shared_graph()));
  ConfigGen gen(3);
  for (int t = 0; t < 100; ++t) {
    Config e = gen.config(3, 5, 3);
    int n = 1 + t % 3;
    EXPECT_EQ(markov_iterate(f, e, n), naive_iterate(f, e, n)) << e.str();
  }
  Config root({root_point()});
  EXPECT_EQ(markov_iterate(f, root, 3), naive_iterate(f, root, 3));
  EXPECT_EQ(markov_iterate(f, root, 4), naive_iterate(f, root, 4));
}

TEST(Lamplighter, DistributionWeightsSumToFivePowers) {
  ConfigGen gen(5);
  for (int n = 0; n <= 6; ++n) {
    BigInt total = 0;
    for (const auto& [c, w] : lamp_distribution(gen.config(), n)) total += w;
    EXPECT_EQ(total, ipow(BigInt(5), static_cast<unsigned>(n)));
  }
  EXPECT_THROW(lamp_distribution(Config{}, kMarkovIterateCap + 1), CapExceeded);
}

TEST(Lamplighter, MarkovIteratesOfMinFunctionDecrease) {
  SetFn f = minfun(canonical_phi_u(shared_graph()));
  ConfigGen gen(9);
  for (int t = 0; t < 20; ++t) {
    Config e = gen.config(3, 5, 4);
    Rational prev = f(e);
    for (int n = 1; n <= 5; ++n) {
      Rational cur = markov_iterate(f, e, n);
      EXPECT_LE(cur, prev) << e.str() << " n=" << n;
      prev = cur;
    }
  }
}

TEST(Lamplighter, MinFunctionIsSwitchInvariant) {
  ConfigGen gen(13);
  std::vector<Config> samples;
  for (int t = 0; t < 500; ++t) samples.push_back(gen.config());
  EXPECT_TRUE(switch_invariant_check(minfun(canonical_phi_u(shared_graph())), samples).pass());
  SetFn counting{"size", [](const Config& e) { return Rational(static_cast<long>(e.size())); }};
  EXPECT_FALSE(switch_invariant_check(counting, samples).pass());
}

}  // namespace
}  // namespace lampwalk
