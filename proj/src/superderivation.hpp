#pragma once

#include <vector>

#include "car.hpp"

namespace skms {

// Sparse linear combination of words, kept canonical: factors normalized,
// each argument scaled so its leading coefficient is 1 (the scalar moves to
// the word), words sorted and merged, zero words dropped.
class WordSum {
 public:
  WordSum() = default;
  WordSum(Word w);  // NOLINT: a word is a one-term sum
  explicit WordSum(std::vector<Word> words);

  const std::vector<Word>& words() const { return words_; }
  bool empty() const { return words_.empty(); }

  WordSum& operator+=(const WordSum& other);
  WordSum& operator*=(cplx s);
  friend WordSum operator+(WordSum a, const WordSum& b) { return a += b; }
  friend WordSum operator-(WordSum a, const WordSum& b) { return a += b * cplx(-1.0); }
  friend WordSum operator*(WordSum a, cplx s) { return a *= s; }
  friend WordSum operator*(const WordSum& a, const WordSum& b);

  // Equality up to `tol` on coefficients and test-function data, robust to
  // rounding differences that keep near-equal words from merging.
  bool approx_equal(const WordSum& other, double tol) const;

 private:
  void canonicalize();
  std::vector<Word> words_;
};

WordSum grade(const WordSum& s);
WordSum adjoint(const WordSum& s);  // normalized
WordSum translate_all(const WordSum& s, double t);

// delta(F(f)) = J(f), delta(J(f)) = i F(f'), extended by the graded Leibniz
// rule delta(xy) = delta(x) y + gamma(x) delta(y).
WordSum delta(const Word& w);
WordSum delta(const WordSum& s);
WordSum delta_squared(const Word& w);

// i * sum_k (w with the k-th argument differentiated).
WordSum translation_generator(const Word& w);

WordValue evaluate(const QuasiFreeFunctional& psi, const WordSum& s);

struct Residual {
  double residual = 0.0;
  cplx lhs{};
  cplx rhs{};
  double error = 0.0;  // propagated quadrature error
};

// |psi(delta(w))| relative to the largest single-word value in delta(w).
Residual s4_check(const QuasiFreeFunctional& psi, const Word& w);

// psi(x delta^2(y) z) against -i d/dt psi(x alpha_t(y) z) at t = 0 by a
// central difference with step h; residual |L - R| / max(|L|, |R|, 1).
Residual s5_check(const QuasiFreeFunctional& psi, const Word& x, const Word& y, const Word& z, double h);

}  // namespace skms
