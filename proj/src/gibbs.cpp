#include "gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "linalg.hpp"

namespace skms {

namespace {

using Eigen::Index;

MatrixXc diag_c(const Eigen::VectorXd& d) { return d.cast<cplx>().asDiagonal(); }

void check_blocks(const std::vector<GibbsInstance>& instances, const std::vector<MatrixXc>& x) {
  if (x.size() != instances.size()) throw InvalidArgument("gibbs: need one block per instance");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].rows() != instances[i].dim() || x[i].cols() != instances[i].dim())
      throw InvalidArgument("gibbs: block size does not match its instance");
}

}  // namespace

GibbsInstance::GibbsInstance(Eigen::VectorXd g, Eigen::VectorXd e) : grading(std::move(g)), energies(std::move(e)) {
  if (grading.size() < 2 || grading.size() != energies.size())
    throw InvalidArgument("GibbsInstance: grading and energies must have equal size >= 2");
  bool plus = false, minus = false;
  for (Index i = 0; i < grading.size(); ++i) {
    if (grading(i) == 1.0)
      plus = true;
    else if (grading(i) == -1.0)
      minus = true;
    else
      throw InvalidArgument("GibbsInstance: grading entries must be +1 or -1");
    if (!(energies(i) >= 0.0) || !std::isfinite(energies(i)))
      throw InvalidArgument("GibbsInstance: energies must be finite and nonnegative");
  }
  if (!plus || !minus) throw InvalidArgument("GibbsInstance: grading must not be +-1");
}

MatrixXc GibbsInstance::grading_matrix() const { return diag_c(grading); }

MatrixXc GibbsInstance::boltzmann() const { return diag_c((-energies).array().exp().matrix()); }

double GibbsInstance::graded_trace() const { return grading.dot((-energies).array().exp().matrix()); }

GibbsInstance random_gibbs_instance(std::mt19937_64& rng, int n, double max_energy) {
  if (n < 2) throw InvalidArgument("random_gibbs_instance: n >= 2");
  std::uniform_real_distribution<double> energy(0.0, max_energy);
  std::uniform_int_distribution<int> split(1, n - 1);
  const int plus = split(rng);
  Eigen::VectorXd g(n), e(n);
  for (int i = 0; i < n; ++i) {
    g(i) = i < plus ? 1.0 : -1.0;
    e(i) = energy(rng);
  }
  std::shuffle(g.data(), g.data() + n, rng);
  return GibbsInstance(g, e);
}

nlohmann::json to_json(const GibbsInstance& inst) {
  return {{"grading", std::vector<double>(inst.grading.data(), inst.grading.data() + inst.grading.size())},
          {"energies", std::vector<double>(inst.energies.data(), inst.energies.data() + inst.energies.size())}};
}

GibbsInstance gibbs_instance_from_json(const nlohmann::json& j) {
  const auto g = j.at("grading").get<std::vector<double>>();
  const auto e = j.at("energies").get<std::vector<double>>();
  return GibbsInstance(Eigen::Map<const Eigen::VectorXd>(g.data(), Index(g.size())),
                       Eigen::Map<const Eigen::VectorXd>(e.data(), Index(e.size())));
}

std::vector<std::pair<int, int>> all_matrix_units(int n) {
  std::vector<std::pair<int, int>> units;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) units.emplace_back(k, l);
  return units;
}

std::vector<MatrixXc> solve_intertwiner(const MatrixXc& grading, const std::vector<std::pair<int, int>>& units) {
  const Index n = grading.rows();
  const Index unknowns = n * n;
  auto var = [n](Index p, Index q) { return p + n * q; };
  // Normal equations A^* A accumulated row by row; each row of A is
  // (Gamma v E_kl Gamma - E_kl v)_{ij}, sparse in v.
  MatrixXc normal = MatrixXc::Zero(unknowns, unknowns);
  std::vector<std::pair<Index, cplx>> row;
  for (const auto& [k, l] : units) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        row.clear();
        const cplx glj = grading(l, j);
        if (glj != cplx{})
          for (Index p = 0; p < n; ++p)
            if (grading(i, p) != cplx{}) row.emplace_back(var(p, k), grading(i, p) * glj);
        if (i == k) row.emplace_back(var(l, j), -1.0);
        for (const auto& [r, a] : row)
          for (const auto& [s, b] : row) normal(r, s) += std::conj(a) * b;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(normal);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<MatrixXc> basis;
  for (Index c = 0; c < unknowns; ++c) {
    if (es.eigenvalues()(c) > 1e-9 * scale) break;
    MatrixXc v(n, n);
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q) v(p, q) = es.eigenvectors()(var(p, q), c);
    // fix the phase so the largest entry is real positive
    Index r0 = 0, c0 = 0;
    v.cwiseAbs().maxCoeff(&r0, &c0);
    v *= std::abs(v(r0, c0)) / v(r0, c0);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<MatrixXc> solve_intertwiner(const GibbsInstance& inst) {
  return solve_intertwiner(inst.grading_matrix(), all_matrix_units(inst.dim()));
}

double span_residual(const std::vector<MatrixXc>& basis, const MatrixXc& target) {
  if (basis.size() != 1) return std::numeric_limits<double>::infinity();
  const MatrixXc t = target / target.norm();
  const MatrixXc& v = basis.front();
  const cplx overlap = (t.adjoint() * v).trace();
  return (v - overlap * t).norm();
}

double intertwiner_residual(const std::vector<MatrixXc>& basis, const MatrixXc& grading,
                            const std::vector<std::pair<int, int>>& units) {
  double worst = 0.0;
  const Index n = grading.rows();
  for (const auto& v : basis)
    for (const auto& [k, l] : units) {
      MatrixXc x = MatrixXc::Zero(n, n);
      x(k, l) = 1.0;
      worst = std::max(worst, max_abs(grading * v * x * grading - x * v));
    }
  return worst;
}

HyperplaneWeights normalize_weights(const std::vector<double>& raw, const std::vector<GibbsInstance>& instances) {
  if (raw.size() != instances.size()) throw InvalidArgument("normalize_weights: one weight per instance");
  double total = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) total += raw[i] * instances[i].graded_trace();
  if (total == 0.0 || !std::isfinite(total)) throw InvalidArgument("normalize_weights: weights are parallel to the hyperplane");
  HyperplaneWeights w;
  for (double r : raw) w.mu.push_back(r / total);
  return w;
}

double hyperplane_residual(const HyperplaneWeights& w, const std::vector<GibbsInstance>& instances) {
  if (w.mu.size() != instances.size()) throw InvalidArgument("hyperplane_residual: one weight per instance");
  double total = 0.0;
  for (std::size_t i = 0; i < w.mu.size(); ++i) total += w.mu[i] * instances[i].graded_trace();
  return std::abs(total - 1.0);
}

nlohmann::json to_json(const HyperplaneWeights& w) { return {{"mu", w.mu}}; }

HyperplaneWeights weights_from_json(const nlohmann::json& j) {
  HyperplaneWeights w;
  w.mu = (j.is_array() ? j : j.at("mu")).get<std::vector<double>>();
  return w;
}

cplx super_gibbs_eval(const HyperplaneWeights& w, const std::vector<GibbsInstance>& instances,
                      const std::vector<MatrixXc>& x) {
  if (hyperplane_residual(w, instances) > 1e-12) throw InvalidArgument("super_gibbs_eval: weights off the hyperplane");
  check_blocks(instances, x);
  cplx total{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& inst = instances[i];
    // diagonal grading and Boltzmann factor: tr(G x B) = sum_j g_j x_jj e^{-E_j}
    cplx s{};
    for (Index j = 0; j < inst.grading.size(); ++j) s += inst.grading(j) * x[i](j, j) * std::exp(-inst.energies(j));
    total += w.mu[i] * s;
  }
  return total;
}

Residual boundary_check_matrix(const HyperplaneWeights& w, const std::vector<GibbsInstance>& instances,
                               const std::vector<MatrixXc>& x, const std::vector<MatrixXc>& y) {
  check_blocks(instances, x);
  check_blocks(instances, y);
  std::vector<MatrixXc> left, right;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& inst = instances[i];
    const MatrixXc g = inst.grading_matrix();
    const MatrixXc up = diag_c(inst.energies.array().exp().matrix());
    left.push_back(x[i] * inst.boltzmann() * y[i] * up);
    right.push_back(y[i] * g * x[i] * g);
  }
  Residual r;
  r.lhs = super_gibbs_eval(w, instances, left);
  r.rhs = super_gibbs_eval(w, instances, right);
  r.residual = std::abs(r.lhs - r.rhs) / std::max({std::abs(r.lhs), std::abs(r.rhs), 1.0});
  return r;
}

UngradedCheck ungraded_case_check(const Eigen::VectorXd& energies, int trials, std::uint64_t seed) {
  const Index n = energies.size();
  if (n < 1) throw InvalidArgument("ungraded_case_check: empty energies");
  MatrixXc swap = MatrixXc::Zero(2 * n, 2 * n);
  swap.topRightCorner(n, n).setIdentity();
  swap.bottomLeftCorner(n, n).setIdentity();
  std::vector<std::pair<int, int>> units;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      units.emplace_back(k, l);
      units.emplace_back(int(n) + k, int(n) + l);
    }
  Eigen::VectorXd doubled(2 * n);
  doubled << energies, energies;
  const MatrixXc boltz = diag_c((-doubled).array().exp().matrix());

  UngradedCheck out;
  const auto basis = solve_intertwiner(swap, units);
  out.solution_dim = int(basis.size());
  out.span_residual = span_residual(basis, swap);
  out.intertwiner_residual = intertwiner_residual(basis, swap, units);
  out.trace_gamma = std::abs((swap * boltz).trace());

  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const MatrixXc a = random_hermitian(rng, n), b = random_hermitian(rng, n);
    MatrixXc even = MatrixXc::Zero(2 * n, 2 * n), general = MatrixXc::Zero(2 * n, 2 * n);
    even.topLeftCorner(n, n) = a;
    even.bottomRightCorner(n, n) = a;
    general.topLeftCorner(n, n) = a;
    general.bottomRightCorner(n, n) = b;
    for (const auto& v : basis) {
      out.max_value = std::max(out.max_value, std::abs((v * even * boltz).trace()));
      out.max_value = std::max(out.max_value, std::abs((v * general * boltz).trace()));
    }
    out.max_value = std::max(out.max_value, std::abs((swap * even * boltz).trace()));
  }
  return out;
}

std::optional<GibbsNonpositivity> gibbs_nonpositivity_witness(const HyperplaneWeights& w,
                                                              const std::vector<GibbsInstance>& instances) {
  if (w.mu.size() != instances.size()) throw InvalidArgument("gibbs_nonpositivity_witness: one weight per instance");
  std::optional<GibbsNonpositivity> best;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    for (Index j = 0; j < inst.grading.size(); ++j) {
      const double v = w.mu[i] * inst.grading(j) * std::exp(-inst.energies(j));
      if (v < 0.0 && (!best || v < best->value)) best = GibbsNonpositivity{int(i), int(j), v};
    }
  }
  return best;
}

}  // namespace skms
