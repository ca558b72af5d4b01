#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "car.hpp"
#include "pfaffian.hpp"

namespace skms {

// Finite-dimensional CAR data on K = C^{2m}.  Gamma v = U conj(v).  The mode
// basis orders coordinates as (e_1..e_m, f_1..f_m) and the standard
// conjugation swaps the two blocks.
struct CarInstance {
  int m = 1;
  MatrixXc gamma_u;
  MatrixXc R;
  MatrixXc T;

  int dim() const { return 2 * m; }
  // Gamma A Gamma = U conj(A) conj(U).
  MatrixXc gamma_conj(const MatrixXc& a) const;
  Eigen::VectorXcd gamma(const Eigen::VectorXcd& v) const;
  bool has_standard_gamma(double tol = 1e-14) const;

  // Throws InvalidArgument when 0 <= R <= 1, R + Gamma R Gamma = 1,
  // T + Gamma T Gamma = 0, or Gamma^2 = 1 fail by more than tol.
  void validate(double tol = 1e-12) const;
};

MatrixXc standard_gamma(int m);

struct RandomInstanceOptions {
  double t_trace_norm_max = 2.0;
  bool zero_t = false;
};
CarInstance random_instance(std::mt19937_64& rng, int m, const RandomInstanceOptions& opts = {});

nlohmann::json to_json(const CarInstance& inst);
CarInstance car_instance_from_json(const nlohmann::json& j);

struct SpectralSplit {
  MatrixXc S, P0, P1, P2;
  MatrixXc S0, S1, S2;
  MatrixXc X, Y, Y_clipped;
  std::vector<Eigen::VectorXcd> e;  // eigenvectors of S2 - P2 on P2 K
  std::vector<double> lambda;       // their eigenvalues, > 0
  double trace_abs_Y = 0.0;
  double c_plus = 1.0, c_minus = 1.0, c = 1.0;
  std::vector<std::string> warnings;
};

// P0 = chi_(-inf,0)(S), P1 = chi_[0,1](S), P2 = chi_(1,inf)(S); eigenvalues
// within spectral_tol of 0 or 1 go to P1 with a warning.
SpectralSplit spectral_split(const CarInstance& inst, double spectral_tol = 1e-12);

struct SplitInvariants {
  double gamma_p0_p2 = 0;    // |Gamma P0 Gamma - P2|
  double gamma_p1 = 0;       // |Gamma P1 Gamma - P1|
  double x_bounds = 0;       // violation of 0 <= X <= 1
  double gamma_x = 0;        // |Gamma X Gamma - (1 - X)|
  double gamma_y = 0;        // |Gamma Y Gamma + Y|
  double p0_block = 0;       // violation of 0 <= P0 R P0 <= -P0 T P0
  double eigenbasis = 0;     // {e_j, Gamma e_j} orthonormal, Y Gamma e_j = -lambda_j Gamma e_j
  double worst() const;
};
SplitInvariants check_invariants(const CarInstance& inst, const SpectralSplit& split);

struct DominationResult {
  double worst_ratio = 0.0;
  long monomials = 0;
  bool exhaustive = true;
};
// Max |phi_{X+Y}(a)| / (c phi_{X-Y'}(a)) over monomials a in the
// commuting projections p_{j,0}, p_{j,1}.
DominationResult domination_check(const SpectralSplit& split, std::uint64_t seed = 0, long max_exhaustive = 100000);

// Jordan-Wigner Fock space for m modes: F(v) = sum v_{e_i} a_i + v_{f_i} a_i^*.
class FockSpace {
 public:
  explicit FockSpace(int m);
  int modes() const { return m_; }
  long dim() const { return 1L << m_; }
  const MatrixXc& annihilator(int i) const { return a_[std::size_t(i)]; }
  MatrixXc field(const Eigen::VectorXcd& v) const;

 private:
  int m_;
  std::vector<MatrixXc> a_;
};

struct FockDensity {
  MatrixXc rho;
  double residual = 0.0;  // max over Majorana pairs of |tr(rho c_a c_b) - phi(c_a c_b)|
};
// Density rho with tr(rho w) = quasi-free value of w for the symbol S (mode
// basis, standard Gamma), built from the Majorana-string expansion
// rho = 2^{-m} sum_A phi(Q_A) Q_A^{-1}.
FockDensity fock_functional(const MatrixXc& symbol, int m);

// tr(rho F(v_1) ... F(v_n)).
cplx fock_eval(const FockSpace& fock, const MatrixXc& rho, const std::vector<Eigen::VectorXcd>& word);

// Majorana coordinates: columns u_a / sqrt 2 with u_{2i} = e_i + f_i,
// u_{2i+1} = -i e_i + i f_i.  In these coordinates Gamma is plain complex
// conjugation.
MatrixXc majorana_basis(int m);

// Vectors of C^d carried as d-component test functions with one h0 term per
// component, so conjugate() is Gamma in Majorana coordinates.
TestFunction encode_vector(const Eigen::VectorXcd& w);
Eigen::VectorXcd decode_vector(const TestFunction& f);

// Quasi-free functional with 2-point <f, S g> read off the encoded vectors;
// S is given in the mode basis and moved to Majorana coordinates.
QuasiFreeFunctional matrix_functional(const MatrixXc& symbol_mode_basis);
// The word F(v_1)...F(v_n) for mode-basis vectors, encoded for
// matrix_functional.
Word matrix_word(const std::vector<Eigen::VectorXcd>& mode_vectors);

struct JordanLevel {
  int modes = 0;
  double norm = 0, positive = 0, negative = 0;
  double singular_norm = 0;  // trace norm from singular values
  double trace = 0;
  double solve_residual = 0;
};
// Restrictions to CAR(K_k), K_k spanned by the first k e- and f-modes.
std::vector<JordanLevel> jordan_norms(const CarInstance& inst, const std::vector<int>& sub_dims);

struct NonIsotonyWitness {
  CarInstance instance;
  std::vector<JordanLevel> levels;
  int lower = 0, upper = 0;  // indices into levels with norm[upper] > norm[lower]
  double margin = 0;
  int tries = 0;
};
std::optional<NonIsotonyWitness> non_isotony_search(std::uint64_t seed, int trials, int max_modes = 4,
                                                    double min_margin = 1e-6);

// Worst RHS - LHS of ||x^{1/2} - y^{1/2}||_2^2 <= ||x - y||_1 over random
// positive pairs of size n.
double powers_stormer_check(int n, int trials, std::uint64_t seed);
double powers_stormer_slack(const MatrixXc& x, const MatrixXc& y);

// Product formula against the Fock density of the symbol restricted to
// span{e_j, Gamma e_j}: max error over all monomials.
double product_formula_fock_residual(const CarInstance& inst, const SpectralSplit& split);

}  // namespace skms
