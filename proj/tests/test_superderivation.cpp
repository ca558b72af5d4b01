#include <random>

#include <gtest/gtest.h>

#include "superderivation.hpp"
#include "test_helpers.hpp"

using namespace skms;

namespace {

constexpr double kTol = 1e-13;
const cplx I(0.0, 1.0);

RandomTestFunctionOptions complex_opts() {
  RandomTestFunctionOptions o;
  o.real = false;
  o.max_freq = 1.0;
  return o;
}

Word random_any(std::mt19937_64& rng, int max_len = 3) {
  std::uniform_int_distribution<int> len(0, max_len);
  const int total = len(rng);
  std::uniform_int_distribution<int> split(0, total);
  const int nf = split(rng);
  Word w = random_word(rng, nf, total - nf, complex_opts());
  std::normal_distribution<double> g;
  w.coeff = cplx(g(rng), g(rng));
  return w;
}

const QuasiFreeFunctional& canonical() {
  static const QuasiFreeFunctional psi = QuasiFreeFunctional::canonical();
  return psi;
}

}  // namespace

TEST(Delta, FermionToCurrent) {
  std::mt19937_64 rng(1);
  const auto f = random_test_function(rng);
  EXPECT_TRUE(delta(fermion(f)).approx_equal(WordSum(boson(f)), kTol));
}

TEST(Delta, CurrentToDerivedFermion) {
  std::mt19937_64 rng(2);
  const auto f = random_test_function(rng);
  EXPECT_TRUE(delta(boson(f)).approx_equal(WordSum(fermion(derivative(f), I)), kTol));
}

TEST(Delta, KillsTheUnit) { EXPECT_TRUE(delta(unit_word()).empty()); }

TEST(Delta, TwoFermions) {
  std::mt19937_64 rng(3);
  const auto f = random_test_function(rng), g = random_test_function(rng);
  const WordSum expected = WordSum(boson(f) * fermion(g)) - WordSum(fermion(f) * boson(g));
  EXPECT_TRUE(delta(fermion(f) * fermion(g)).approx_equal(expected, kTol));
}

TEST(DeltaSquared, SingleFactors) {
  std::mt19937_64 rng(4);
  const auto f = random_test_function(rng);
  EXPECT_TRUE(delta_squared(fermion(f)).approx_equal(WordSum(fermion(derivative(f), I)), kTol));
  EXPECT_TRUE(delta_squared(boson(f)).approx_equal(WordSum(boson(derivative(f), I)), kTol));
}

TEST(DeltaSquared, MixedPair) {
  std::mt19937_64 rng(5);
  const auto f = random_test_function(rng), g = random_test_function(rng);
  const WordSum expected =
      WordSum(fermion(derivative(f), I) * boson(g)) + WordSum(fermion(f, I) * boson(derivative(g)));
  EXPECT_TRUE(delta_squared(fermion(f) * boson(g)).approx_equal(expected, kTol));
}

TEST(DeltaSquared, IsTheTranslationGenerator) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Word w = random_any(rng, 4);
    EXPECT_TRUE(delta_squared(w).approx_equal(translation_generator(w), kTol)) << trial;
  }
}

TEST(Delta, GradedLeibniz) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Word u = random_any(rng), v = random_any(rng);
    const WordSum lhs = delta(u * v);
    const WordSum rhs = delta(u) * WordSum(v) + WordSum(grade(u)) * delta(v);
    EXPECT_TRUE(lhs.approx_equal(rhs, kTol)) << trial;
  }
}

TEST(Delta, AnticommutesWithGrading) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Word w = random_any(rng, 4);
    EXPECT_TRUE(delta(grade(w)).approx_equal(grade(delta(w)) * cplx(-1.0), kTol));
  }
}

TEST(Delta, StarCompatibility) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Word w = random_any(rng, 4);
    EXPECT_TRUE(delta(normalize(adjoint(w))).approx_equal(grade(adjoint(delta(w))), kTol)) << trial;
  }
}

TEST(Delta, CommutesWithTranslations) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> tdist(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const Word w = random_any(rng, 4);
    const double t = tdist(rng);
    EXPECT_TRUE(delta(translate_all(w, t)).approx_equal(translate_all(delta(w), t), kTol));
  }
}

TEST(S4, SingleFermionIsExactlyZero) {
  std::mt19937_64 rng(11);
  const auto r = s4_check(canonical(), fermion(random_test_function(rng)));
  EXPECT_EQ(r.lhs, cplx(0.0));
  EXPECT_EQ(r.residual, 0.0);
}

TEST(S4, CurrentTimesFermion) {
  std::mt19937_64 rng(12);
  const auto f = random_test_function(rng), g = random_test_function(rng);
  const auto r = s4_check(canonical(), boson(f) * fermion(g));
  // integration by parts: theta(f', g) + theta(f, g') = 0
  const cplx a = theta(derivative(f), g).value, b = theta(f, derivative(g)).value;
  EXPECT_LE(std::abs(a + b), 1e-9);
  EXPECT_LE(r.residual, 1e-6);
  EXPECT_GT(std::abs(a), 1e-3);
}

TEST(S4, RandomMixedWords) {
  std::mt19937_64 rng(13);
  const std::pair<int, int> shapes[] = {{1, 1}, {1, 3}, {3, 1}, {3, 3}, {1, 5}, {5, 1}};
  for (int trial = 0; trial < 50; ++trial) {
    const auto [nf, nj] = shapes[trial % 6];
    const Word w = random_word(rng, nf, nj, complex_opts());
    EXPECT_LE(s4_check(canonical(), w).residual, 1e-6) << trial;
  }
}

TEST(S5, UnitMiddle) {
  std::mt19937_64 rng(14);
  const Word x = random_word(rng, 1, 0), z = random_word(rng, 1, 0);
  const auto r = s5_check(canonical(), x, unit_word(), z, 1e-3);
  EXPECT_EQ(r.lhs, cplx(0.0));
  EXPECT_LE(std::abs(r.rhs), 1e-9);
}

TEST(S5, TwoFermionsAgainstKernelDerivative) {
  std::mt19937_64 rng(15);
  const auto f = random_test_function(rng), g = random_test_function(rng);
  const auto r = s5_check(canonical(), unit_word(), fermion(f) * fermion(g), unit_word(), 1e-3);
  // independent: i d/dx on both arguments of the pair entry
  const cplx direct = I * (theta(derivative(f), g).value + theta(f, derivative(g)).value);
  EXPECT_LE(std::abs(r.lhs - direct), 1e-9);
  EXPECT_LE(r.residual, 1e-5);
}

TEST(S5, RandomTriples) {
  std::mt19937_64 rng(16);
  // (x, y, z) kinds with even sectors overall
  const std::vector<std::vector<std::pair<int, int>>> shapes = {
      {{1, 0}, {1, 1}, {0, 1}}, {{1, 0}, {2, 0}, {1, 0}}, {{0, 1}, {0, 2}, {0, 1}}, {{0, 1}, {1, 1}, {1, 0}}};
  for (int trial = 0; trial < 20; ++trial) {
    const auto& s = shapes[trial % shapes.size()];
    const Word x = random_word(rng, s[0].first, s[0].second, complex_opts());
    const Word y = random_word(rng, s[1].first, s[1].second, complex_opts());
    const Word z = random_word(rng, s[2].first, s[2].second, complex_opts());
    EXPECT_LE(s5_check(canonical(), x, y, z, 1e-3).residual, 1e-5) << trial;
  }
}

TEST(S5, FiniteDifferenceConvergesQuadratically) {
  std::mt19937_64 rng(17);
  const Word x = random_word(rng, 1, 0), y = random_word(rng, 1, 1), z = random_word(rng, 0, 1);
  const double coarse = s5_check(canonical(), x, y, z, 1e-1).residual;
  const double fine = s5_check(canonical(), x, y, z, 5e-2).residual;
  EXPECT_GT(coarse, 0.0);
  EXPECT_NEAR(fine / coarse, 0.25, 0.05);
}
