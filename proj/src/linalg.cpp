#include "linalg.hpp"

#include <cmath>

#include "errors.hpp"

namespace skms {

nlohmann::json matrix_to_json(const MatrixXc& a) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array(), c = nlohmann::json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      r.push_back(a(i, j).real());
      c.push_back(a(i, j).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return {{"re", re}, {"im", im}};
}

MatrixXc matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("re")) throw InvalidArgument("matrix: expected {\"re\": [[...]], \"im\": [[...]]}");
  const auto& re = j.at("re");
  const Eigen::Index rows = Eigen::Index(re.size());
  const Eigen::Index cols = rows ? Eigen::Index(re.at(0).size()) : 0;
  MatrixXc a = MatrixXc::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (Eigen::Index(re.at(std::size_t(i)).size()) != cols) throw InvalidArgument("matrix: ragged rows");
    for (Eigen::Index k = 0; k < cols; ++k) a(i, k) = re.at(std::size_t(i)).at(std::size_t(k)).get<double>();
  }
  if (j.contains("im")) {
    const auto& im = j.at("im");
    if (Eigen::Index(im.size()) != rows) throw InvalidArgument("matrix: re/im shape mismatch");
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (Eigen::Index(im.at(std::size_t(i)).size()) != cols) throw InvalidArgument("matrix: re/im shape mismatch");
      for (Eigen::Index k = 0; k < cols; ++k)
        a(i, k) += std::complex<double>(0.0, im.at(std::size_t(i)).at(std::size_t(k)).get<double>());
    }
  }
  return a;
}

double max_abs(const MatrixXc& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

Eigen::VectorXd hermitian_eigenvalues(const MatrixXc& a) {
  if (a.size() == 0) return {};
  const MatrixXc h = (a + a.adjoint()) / 2.0;
  return Eigen::SelfAdjointEigenSolver<MatrixXc>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

double trace_norm(const MatrixXc& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<MatrixXc>(a).singularValues().sum();
}

MatrixXc psd_sqrt(const MatrixXc& a) {
  const MatrixXc h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  const Eigen::VectorXd s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace skms
