#include "pfaffian.hpp"

#include <vector>

#include "errors.hpp"

namespace skms {

namespace {

using cplx = std::complex<double>;

// Sum over matchings of the index list `idx`; `sign` toggles the
// alternating signs of the fermionic expansion.
cplx matchings(const MatrixXc& a, std::vector<int>& idx, bool sign) {
  if (idx.empty()) return 1.0;
  const int first = idx[0];
  cplx total = 0.0;
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const int partner = idx[j];
    const cplx entry = a(first, partner);
    if (entry == cplx{}) continue;
    std::vector<int> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t k = 1; k < idx.size(); ++k)
      if (k != j) rest.push_back(idx[k]);
    const double s = (sign && (j % 2 == 0)) ? -1.0 : 1.0;
    total += s * entry * matchings(a, rest, sign);
  }
  return total;
}

void check_square(const MatrixXc& a, const char* what) {
  if (a.rows() != a.cols()) throw InvalidArgument(std::string(what) + ": matrix must be square");
}

}  // namespace

cplx pfaffian_expansion(const MatrixXc& a) {
  check_square(a, "pfaffian");
  if (a.rows() % 2) return 0.0;
  std::vector<int> idx(a.rows());
  for (int i = 0; i < a.rows(); ++i) idx[i] = i;
  return matchings(a, idx, true);
}

cplx pfaffian_elimination(MatrixXc a) {
  check_square(a, "pfaffian");
  const Eigen::Index n = a.rows();
  if (n % 2) return 0.0;
  // Work on a fully skew copy so row and column swaps stay consistent.
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) a(j, i) = -a(i, j);
  }
  cplx pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
    kp += k + 1;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (a(k + 1, k) == cplx{}) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index m = n - k - 2;
      const Eigen::VectorXcd tau = a.row(k).tail(m).transpose() / a(k, k + 1);
      const Eigen::VectorXcd col = a.col(k + 1).tail(m);
      a.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

cplx pfaffian(const MatrixXc& a) {
  check_square(a, "pfaffian");
  if (a.rows() <= 6) return pfaffian_expansion(a);
  return pfaffian_elimination(a);
}

cplx hafnian(const MatrixXc& a) {
  check_square(a, "hafnian");
  if (a.rows() % 2) return 0.0;
  std::vector<int> idx(a.rows());
  for (int i = 0; i < a.rows(); ++i) idx[i] = i;
  return matchings(a, idx, false);
}

}  // namespace skms
