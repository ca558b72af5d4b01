#pragma once

#include <complex>

#include <Eigen/Dense>

namespace skms {

using MatrixXc = Eigen::MatrixXcd;

// Pfaffian of a skew-symmetric matrix (only the strict upper triangle is
// read).  Sizes up to 6 use the pairing expansion; larger ones use
// Parlett-Reid elimination with partial pivoting.
std::complex<double> pfaffian(const MatrixXc& a);

// The same value by expansion along the first row; exponential cost, used as
// a reference and for small matrices.
std::complex<double> pfaffian_expansion(const MatrixXc& a);

// Parlett-Reid elimination regardless of size.
std::complex<double> pfaffian_elimination(MatrixXc a);

// Ordered hafnian: sum over perfect matchings of prod a(i, j), i < j.
std::complex<double> hafnian(const MatrixXc& a);

}  // namespace skms
