#pragma once

#include <functional>
#include <vector>

#include "kernel.hpp"
#include "pfaffian.hpp"
#include "testfn.hpp"

namespace skms {

enum class FieldKind { Fermion, Boson };

struct Generator {
  FieldKind kind = FieldKind::Fermion;
  TestFunction arg;
  bool starred = false;
};

// coeff * factors[0] * factors[1] * ...; no factors is the unit.
struct Word {
  cplx coeff{1.0, 0.0};
  std::vector<Generator> factors;

  bool is_unit() const { return factors.empty(); }
  int fermion_count() const;
  bool is_even() const { return fermion_count() % 2 == 0; }
};

Word fermion(const TestFunction& f, cplx coeff = 1.0);
Word boson(const TestFunction& f, cplx coeff = 1.0);
Word unit_word(cplx coeff = 1.0);

// Concatenation with multiplied coefficients.
Word operator*(const Word& a, const Word& b);

// Resolve stars with F(f)* = F(Gamma f), J(f)* = J(Gamma f).
Word normalize(const Word& w);
// Reverse, star every factor, conjugate the coefficient.  Not normalized.
Word adjoint(const Word& w);
// gamma(w) = (-1)^{#F} w.
Word grade(const Word& w);
Word translate_all(const Word& w, double t);

// Two-point data.  fermi_2pt(f, g) = phi(F(f)* F(g)) and
// bose_2pt(f, g) = psi(J(f)* J(g)); both sesquilinear.  The pairing of
// F(f)F(g) is therefore fermi_2pt(Gamma f, g).
struct PairValue {
  cplx value{};
  double error = 0.0;
};
using TwoPoint = std::function<PairValue(const TestFunction&, const TestFunction&)>;

struct QuasiFreeFunctional {
  TwoPoint fermi_2pt;
  TwoPoint bose_2pt;

  // theta and i theta(., .') from the kernel module.
  static QuasiFreeFunctional canonical(const KernelConfig& cfg = {});
};

// Value with a first-order error bound propagated from the pair entries.
struct WordValue {
  cplx value{};
  double error = 0.0;
};

// Pair matrix A(i, j) = phi(X_i X_j) for i < j over the given factors, all
// of one kind.  Strict upper triangle filled; errors in `err`.
MatrixXc pair_matrix(const QuasiFreeFunctional& phi, const std::vector<Generator>& factors, Eigen::MatrixXd* err = nullptr);

// Expansion phi(F1...F2n) = sum_j (-1)^j phi(F1 Fj) phi(rest), verbatim.
cplx quasifree_eval_recursive(const QuasiFreeFunctional& phi, const Word& w);
// Pfaffian of the pair matrix.
WordValue quasifree_eval_pfaffian(const QuasiFreeFunctional& phi, const Word& w);
// Product functional: Pfaffian over the fermions times hafnian over the
// bosons.
WordValue mixed_eval(const QuasiFreeFunctional& psi, const Word& w);

// Error bound for a Pfaffian or hafnian from entry errors: every matching
// through (i, j) has magnitude at most max|A|^{n/2 - 1}.
double pairing_error_bound(const MatrixXc& a, const Eigen::MatrixXd& err);

// Random word with the given numbers of fermionic and bosonic factors in
// random order; arguments from random_test_function.
Word random_word(std::mt19937_64& rng, int fermions, int bosons, const RandomTestFunctionOptions& opts = {});

nlohmann::json to_json(const Word& w);
Word word_from_json(const nlohmann::json& j);

}  // namespace skms
