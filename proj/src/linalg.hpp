#pragma once

#include <random>

#include <json.hpp>

#include "pfaffian.hpp"

namespace skms {

// {"re": [[...]], "im": [[...]]}; "im" may be omitted on input.
nlohmann::json matrix_to_json(const MatrixXc& a);
MatrixXc matrix_from_json(const nlohmann::json& j);

// Largest absolute entry.
double max_abs(const MatrixXc& a);

// Eigenvalues of the hermitian part of a, ascending.
Eigen::VectorXd hermitian_eigenvalues(const MatrixXc& a);

// Trace norm from singular values.
double trace_norm(const MatrixXc& a);

// Positive square root of a hermitian matrix (negative eigenvalues from
// rounding are clipped to zero).
MatrixXc psd_sqrt(const MatrixXc& a);

// Random hermitian matrix with standard complex Gaussian entries.
template <class Rng>
MatrixXc random_hermitian(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  MatrixXc a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = std::complex<double>(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

}  // namespace skms
