#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "car.hpp"
#include "errors.hpp"
#include "test_helpers.hpp"

using namespace skms;
using skms::testing::ComplexNear;
using skms::testing::rel_diff;

namespace {

RandomTestFunctionOptions complex_opts() {
  RandomTestFunctionOptions o;
  o.real = false;
  o.max_freq = 1.0;
  return o;
}

MatrixXc random_skew(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  MatrixXc a = MatrixXc::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = cplx(g(rng), g(rng));
      a(j, i) = -a(i, j);
    }
  return a;
}

bool words_close(const Word& a, const Word& b, double tol) {
  if (a.factors.size() != b.factors.size() || std::abs(a.coeff - b.coeff) > tol) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const auto &x = a.factors[i], &y = b.factors[i];
    if (x.kind != y.kind || x.starred != y.starred || !x.arg.approx_equal(y.arg, tol)) return false;
  }
  return true;
}

// Sum over P_2n as defined by its inequalities: permutations with
// s(2k-1) < s(2k) and s(1) < s(3) < ... < s(2n-1).
cplx matching_sum_by_permutations(const MatrixXc& b) {
  const int n = int(b.rows());
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  cplx total = 0.0;
  do {
    bool ok = true;
    for (int k = 0; k + 1 < n && ok; k += 2) ok = s[k] < s[k + 1];
    for (int k = 0; k + 2 < n && ok; k += 2) ok = s[k] < s[k + 2];
    if (!ok) continue;
    cplx term = 1.0;
    for (int k = 0; k < n; k += 2) term *= b(s[k], s[k + 1]);
    total += term;
  } while (std::next_permutation(s.begin(), s.end()));
  return total;
}

const QuasiFreeFunctional& canonical() {
  static const QuasiFreeFunctional phi = QuasiFreeFunctional::canonical();
  return phi;
}

}  // namespace

TEST(Pfaffian, TwoByTwoIsTheEntry) {
  MatrixXc a(2, 2);
  a << 0, cplx(0.3, -1.2), cplx(-0.3, 1.2), 0;
  EXPECT_EQ(pfaffian(a), cplx(0.3, -1.2));
  EXPECT_EQ(pfaffian_elimination(a), cplx(0.3, -1.2));
}

TEST(Pfaffian, EliminationMatchesExpansion) {
  std::mt19937_64 rng(1);
  for (int n : {4, 6, 8, 10}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_skew(rng, n);
      EXPECT_LE(rel_diff(pfaffian_elimination(a), pfaffian_expansion(a)), 1e-12) << n;
    }
  }
}

TEST(Pfaffian, SquareIsDeterminant) {
  std::mt19937_64 rng(2);
  for (int n : {2, 4, 8, 12, 16}) {
    const auto a = random_skew(rng, n);
    const cplx pf = pfaffian(a);
    EXPECT_LE(rel_diff(pf * pf, a.determinant()), 1e-10) << n;
  }
}

TEST(Pfaffian, OddSizeVanishes) {
  std::mt19937_64 rng(3);
  EXPECT_EQ(pfaffian(random_skew(rng, 5)), cplx(0.0));
}

TEST(Pfaffian, SingularPivot) {
  MatrixXc a = MatrixXc::Zero(8, 8);
  EXPECT_EQ(pfaffian(a), cplx(0.0));
}

TEST(Hafnian, FourByFourClosedForm) {
  std::mt19937_64 rng(4);
  const auto b = random_skew(rng, 4);
  const cplx expected = b(0, 1) * b(2, 3) + b(0, 2) * b(1, 3) + b(0, 3) * b(1, 2);
  EXPECT_TRUE(ComplexNear(hafnian(b), expected, 1e-14));
}

TEST(Hafnian, MatchesPermutationEnumeration) {
  std::mt19937_64 rng(5);
  for (int n : {2, 4, 6, 8}) {
    const auto b = random_skew(rng, n);
    EXPECT_LE(rel_diff(hafnian(b), matching_sum_by_permutations(b)), 1e-13) << n;
  }
}

TEST(Word, NormalizeResolvesStars) {
  std::mt19937_64 rng(6);
  const auto f = random_test_function(rng, complex_opts());
  Word w = fermion(f);
  w.factors[0].starred = true;
  const Word n = normalize(w);
  EXPECT_FALSE(n.factors[0].starred);
  EXPECT_EQ(n.factors[0].arg, conjugate(f));
  EXPECT_TRUE(words_close(normalize(unit_word()), unit_word(), 0.0));
}

TEST(Word, AdjointOfRealProduct) {
  std::mt19937_64 rng(7);
  const auto f = random_test_function(rng), g = random_test_function(rng);
  const Word w = fermion(f, cplx(0.5, 2.0)) * boson(g);
  const Word a = normalize(adjoint(w));
  ASSERT_EQ(a.factors.size(), 2u);
  EXPECT_EQ(a.coeff, cplx(0.5, -2.0));
  EXPECT_EQ(a.factors[0].kind, FieldKind::Boson);
  EXPECT_TRUE(a.factors[0].arg.approx_equal(g, 0.0));
  EXPECT_EQ(a.factors[1].kind, FieldKind::Fermion);
  EXPECT_TRUE(a.factors[1].arg.approx_equal(f, 0.0));
}

TEST(Word, NormalizedAdjointIsInvolution) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> len(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    Word w = random_word(rng, len(rng), len(rng), complex_opts());
    w.coeff = cplx(0.3, -0.7);
    const Word twice = normalize(adjoint(normalize(adjoint(w))));
    EXPECT_TRUE(words_close(twice, w, 1e-15));
  }
}

TEST(QuasiFree, UnitAndOddWords) {
  EXPECT_EQ(quasifree_eval_recursive(canonical(), unit_word()), cplx(1.0));
  EXPECT_EQ(quasifree_eval_pfaffian(canonical(), unit_word()).value, cplx(1.0));
  std::mt19937_64 rng(9);
  EXPECT_EQ(quasifree_eval_recursive(canonical(), random_word(rng, 1, 0)), cplx(0.0));
  EXPECT_EQ(quasifree_eval_pfaffian(canonical(), random_word(rng, 3, 0)).value, cplx(0.0));
}

TEST(QuasiFree, FourPointHandExpansion) {
  std::mt19937_64 rng(10);
  const Word w = random_word(rng, 4, 0, complex_opts());
  auto t = [&](int i, int j) {
    return theta(conjugate(w.factors[i].arg), w.factors[j].arg).value;
  };
  const cplx hand = t(0, 1) * t(2, 3) - t(0, 2) * t(1, 3) + t(0, 3) * t(1, 2);
  EXPECT_TRUE(ComplexNear(quasifree_eval_recursive(canonical(), w), hand, 1e-14));
  EXPECT_TRUE(ComplexNear(quasifree_eval_pfaffian(canonical(), w).value, hand, 1e-14));
}

TEST(QuasiFree, TwoPointIsThePairEntry) {
  std::mt19937_64 rng(11);
  const Word w = random_word(rng, 2, 0, complex_opts());
  const cplx entry = theta(conjugate(w.factors[0].arg), w.factors[1].arg).value;
  EXPECT_EQ(quasifree_eval_pfaffian(canonical(), w).value, entry);
}

TEST(QuasiFree, RecursiveMatchesPfaffianOnLengthEight) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Word w = random_word(rng, 8, 0, complex_opts());
    const cplx a = quasifree_eval_recursive(canonical(), w);
    const cplx b = quasifree_eval_pfaffian(canonical(), w).value;
    EXPECT_LE(std::abs(a - b), 1e-10 * std::max(std::abs(a), 1e-3));
  }
}

TEST(QuasiFree, PfaffianSquaredIsDeterminantOnPairMatrices) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Word w = random_word(rng, 6, 0, complex_opts());
    MatrixXc a = pair_matrix(canonical(), w.factors);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = i + 1; j < a.cols(); ++j) a(j, i) = -a(i, j);
    const cplx pf = pfaffian(a);
    EXPECT_LE(std::abs(pf * pf - a.determinant()), 1e-8 * std::max(std::abs(a.determinant()), 1e-6));
  }
}

TEST(QuasiFree, BosonicFactorRejectedByFermionicEvaluators) {
  std::mt19937_64 rng(14);
  const Word w = random_word(rng, 1, 1);
  EXPECT_THROW(quasifree_eval_recursive(canonical(), w), InvalidArgument);
  EXPECT_THROW(quasifree_eval_pfaffian(canonical(), w), InvalidArgument);
}

TEST(Mixed, SingleCurrentVanishes) {
  std::mt19937_64 rng(15);
  EXPECT_EQ(mixed_eval(canonical(), boson(random_test_function(rng))).value, cplx(0.0));
}

TEST(Mixed, OnePairingPerSector) {
  std::mt19937_64 rng(16);
  const auto f1 = random_test_function(rng), f2 = random_test_function(rng);
  const auto g1 = random_test_function(rng), g2 = random_test_function(rng);
  const Word w = boson(f1) * boson(f2) * fermion(g1) * fermion(g2);
  const cplx expected = bosonic_2pt(f1, f2).value * theta(g1, g2).value;
  EXPECT_TRUE(ComplexNear(mixed_eval(canonical(), w).value, expected, 1e-14));
  // interleaving does not change the value
  const Word v = boson(f1) * fermion(g1) * boson(f2) * fermion(g2);
  EXPECT_TRUE(ComplexNear(mixed_eval(canonical(), v).value, expected, 1e-14));
}

TEST(Mixed, FourCurrentsHaveNoSigns) {
  std::mt19937_64 rng(17);
  const Word w = random_word(rng, 0, 4);
  auto b = [&](int i, int j) { return bosonic_2pt(w.factors[i].arg, w.factors[j].arg).value; };
  const cplx expected = b(0, 1) * b(2, 3) + b(0, 2) * b(1, 3) + b(0, 3) * b(1, 2);
  EXPECT_TRUE(ComplexNear(mixed_eval(canonical(), w).value, expected, 1e-13));
}

TEST(Mixed, OddWordsVanishExactly) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    const Word w = random_word(rng, 2 * (trial % 3) + 1, trial % 4, complex_opts());
    EXPECT_EQ(mixed_eval(canonical(), w).value, cplx(0.0));
  }
}

TEST(Mixed, TranslationInvariance) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> tdist(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Word w = random_word(rng, 2 * (trial % 2 + 1), 2 * (trial % 2), complex_opts());
    const cplx a = mixed_eval(canonical(), w).value;
    const cplx b = mixed_eval(canonical(), translate_all(w, tdist(rng))).value;
    EXPECT_LE(std::abs(a - b), 1e-8 * std::max(std::abs(a), 1.0));
  }
}

TEST(Mixed, Hermiticity) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    Word w = random_word(rng, 2 * (trial % 2 + 1), 2 * (trial % 3 == 0), complex_opts());
    w.coeff = cplx(0.4, 0.9);
    const cplx a = mixed_eval(canonical(), adjoint(w)).value;
    const cplx b = mixed_eval(canonical(), w).value;
    EXPECT_TRUE(ComplexNear(a, std::conj(b), 1e-9));
  }
}

TEST(Mixed, CarConsistency) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_test_function(rng, complex_opts());
    const auto g = random_test_function(rng, complex_opts());
    const Word a = adjoint(fermion(f)) * fermion(g);
    const Word b = fermion(g) * adjoint(fermion(f));
    const cplx lhs = mixed_eval(canonical(), a).value + mixed_eval(canonical(), b).value;
    EXPECT_TRUE(ComplexNear(lhs, l2_inner(f, g), 1e-9));
  }
}

TEST(Word, JsonRoundTrip) {
  std::mt19937_64 rng(22);
  Word w = random_word(rng, 2, 1, complex_opts());
  w.factors[1].starred = true;
  w.coeff = cplx(1.5, -0.25);
  const Word back = word_from_json(nlohmann::json::parse(to_json(w).dump()));
  EXPECT_TRUE(words_close(back, w, 0.0));
}
