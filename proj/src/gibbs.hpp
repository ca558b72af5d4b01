#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pfaffian.hpp"
#include "superderivation.hpp"

namespace skms {

// One irreducible graded summand: grading diag(g) with g_i = +-1, not all
// equal, and L0 = diag(energies) >= 0.
struct GibbsInstance {
  Eigen::VectorXd grading;
  Eigen::VectorXd energies;

  GibbsInstance() = default;
  // Throws InvalidArgument on a trivial grading, negative energies or
  // mismatched sizes.
  GibbsInstance(Eigen::VectorXd grading, Eigen::VectorXd energies);

  int dim() const { return int(grading.size()); }
  MatrixXc grading_matrix() const;
  MatrixXc boltzmann() const;  // e^{-L0}
  // tr(Gamma e^{-L0})
  double graded_trace() const;
};

GibbsInstance random_gibbs_instance(std::mt19937_64& rng, int n, double max_energy = 3.0);

nlohmann::json to_json(const GibbsInstance& inst);
GibbsInstance gibbs_instance_from_json(const nlohmann::json& j);

// Solutions v of Gamma v x Gamma = x v for every matrix unit x of the
// instance; returned orthonormal in the Hilbert-Schmidt inner product.
std::vector<MatrixXc> solve_intertwiner(const GibbsInstance& inst);
// General form: grading unitary and the matrix units E_kl spanning the
// represented algebra.
std::vector<MatrixXc> solve_intertwiner(const MatrixXc& grading, const std::vector<std::pair<int, int>>& units);

// Distance of v from span{target} (Hilbert-Schmidt); infinity unless the
// basis has exactly one element.
double span_residual(const std::vector<MatrixXc>& basis, const MatrixXc& target);
// max_x |Gamma v x Gamma - x v| over the matrix units, per basis element.
double intertwiner_residual(const std::vector<MatrixXc>& basis, const MatrixXc& grading,
                            const std::vector<std::pair<int, int>>& units);
std::vector<std::pair<int, int>> all_matrix_units(int n);

struct HyperplaneWeights {
  std::vector<double> mu;
};

// Rescale raw weights onto sum mu_i tr(Gamma_i e^{-L0_i}) = 1.
HyperplaneWeights normalize_weights(const std::vector<double>& raw, const std::vector<GibbsInstance>& instances);
double hyperplane_residual(const HyperplaneWeights& w, const std::vector<GibbsInstance>& instances);

nlohmann::json to_json(const HyperplaneWeights& w);
HyperplaneWeights weights_from_json(const nlohmann::json& j);

// phi_mu(x) = sum_i mu_i tr(Gamma_i x_i e^{-L0_i}); x holds one block per
// instance.  Off-hyperplane weights (residual > 1e-12) are rejected.
cplx super_gibbs_eval(const HyperplaneWeights& w, const std::vector<GibbsInstance>& instances,
                      const std::vector<MatrixXc>& x);

// phi_mu(x e^{-L0} y e^{L0}) against phi_mu(y Gamma x Gamma); residual
// |L - R| / max(|L|, |R|, 1).
Residual boundary_check_matrix(const HyperplaneWeights& w, const std::vector<GibbsInstance>& instances,
                               const std::vector<MatrixXc>& x, const std::vector<MatrixXc>& y);

// Doubled representation of an ungraded summand: the algebra is block
// diagonal a (+) b on C^n (+) C^n and the grading swaps the blocks.
struct UngradedCheck {
  int solution_dim = 0;
  double span_residual = 0.0;    // solution against the swap
  double intertwiner_residual = 0.0;
  double trace_gamma = 0.0;      // |tr(Gamma' e^{-L0'})|
  double max_value = 0.0;        // max |tr(v w e^{-L0'})| over random even w
};
UngradedCheck ungraded_case_check(const Eigen::VectorXd& energies, int trials, std::uint64_t seed);

struct GibbsNonpositivity {
  int instance = 0;
  int basis_index = 0;  // w = projection onto this basis vector
  double value = 0.0;   // phi_mu(w) < 0
};
// Most negative phi_mu(P) over rank-one projections onto grading
// eigenvectors; a Gamma = -1 vector works whenever its weight is positive.
std::optional<GibbsNonpositivity> gibbs_nonpositivity_witness(const HyperplaneWeights& w,
                                                              const std::vector<GibbsInstance>& instances);

}  // namespace skms
