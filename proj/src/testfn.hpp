#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace skms {

using cplx = std::complex<double>;

// One term c * sigma^{-1/2} h_n((x - a)/sigma) * exp(i k x) in a given
// vector component, h_n the L2-normalized Hermite function.
struct HermiteTerm {
  int component = 0;
  int order = 0;
  double scale = 1.0;
  double shift = 0.0;
  double freq = 0.0;
  cplx coeff{1.0, 0.0};
};

// Finite Hermite combination with values in C^d.  Terms are kept in a
// canonical order with equal (component, order, scale, shift, freq) merged
// and exact zeros dropped, so structural equality is meaningful.
//
// Fourier convention: fhat(p) = (2 pi)^{-1/2} int f(x) exp(+i p x) dx.
class TestFunction {
 public:
  TestFunction() = default;
  explicit TestFunction(int components);
  TestFunction(int components, std::vector<HermiteTerm> terms);

  int components() const { return components_; }
  std::span<const HermiteTerm> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  cplx operator()(double x, int component = 0) const;

  // Sum of |coeff| over terms; the natural scale for rounding checks.
  double term_norm() const;

  // True when the term list is invariant under conjugation, which makes
  // every pointwise value real.
  bool real_valued(double tol = 1e-14) const;

  TestFunction& operator+=(const TestFunction& other);
  TestFunction& operator*=(cplx s);
  friend TestFunction operator+(TestFunction a, const TestFunction& b) { return a += b; }
  friend TestFunction operator-(TestFunction a, const TestFunction& b) { return a += b * cplx(-1.0); }
  friend TestFunction operator*(TestFunction a, cplx s) { return a *= s; }
  friend TestFunction operator*(cplx s, TestFunction a) { return a *= s; }
  friend bool operator==(const TestFunction& a, const TestFunction& b);

  // Structural comparison with a tolerance on every numeric field.
  bool approx_equal(const TestFunction& other, double tol) const;

  // Lexicographic order on the canonical term list; used to canonicalize
  // word sums.
  static int compare(const TestFunction& a, const TestFunction& b);

 private:
  void canonicalize();

  int components_ = 1;
  std::vector<HermiteTerm> terms_;
};

TestFunction hermite(int n, double sigma, double shift, int component = 0, int components = 1);

TestFunction fourier(const TestFunction& f);
TestFunction derivative(const TestFunction& f);
TestFunction translate(const TestFunction& f, double t);
TestFunction conjugate(const TestFunction& f);

// Exact <f, g> = sum_c int conj(f_c) g_c.
cplx l2_inner(const TestFunction& f, const TestFunction& g);
double l2_norm(const TestFunction& f);

// Pointwise value of the L2-normalized Hermite function, computed by the
// three-term recurrence on h_n directly so large |x| underflows cleanly.
double hermite_function(int n, double x);

// Gauss-Hermite rule for weight exp(-x^2) with `count` nodes.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussHermiteRule& gauss_hermite(int count);

// Support radius outside which every term is below `tol` relative to its
// coefficient, in position space.
double effective_radius(const TestFunction& f, double tol);

// Options for random test functions used by suites and property tests.
struct RandomTestFunctionOptions {
  int max_terms = 3;
  int max_order = 3;
  double min_scale = 0.6;
  double max_scale = 1.5;
  double max_shift = 1.0;
  double max_freq = 0.0;  // zero keeps modulation off
  bool real = true;
  bool unit_norm = true;
};
TestFunction random_test_function(std::mt19937_64& rng, const RandomTestFunctionOptions& opts = {});

nlohmann::json to_json(const TestFunction& f);
TestFunction test_function_from_json(const nlohmann::json& j);

}  // namespace skms
