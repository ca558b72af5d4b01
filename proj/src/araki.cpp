#include "araki.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "errors.hpp"
#include "linalg.hpp"

namespace skms {

namespace {

using Eigen::Index;
using Eigen::VectorXcd;

constexpr cplx I(0.0, 1.0);

MatrixXc eigen_projector(const MatrixXc& vecs, const std::vector<Index>& cols) {
  MatrixXc p = MatrixXc::Zero(vecs.rows(), vecs.rows());
  for (Index c : cols) p += vecs.col(c) * vecs.col(c).adjoint();
  return p;
}

double psd_violation(const MatrixXc& a) {
  if (a.size() == 0) return 0.0;
  return std::max(0.0, -hermitian_eigenvalues(a).minCoeff());
}

}  // namespace

MatrixXc standard_gamma(int m) {
  MatrixXc u = MatrixXc::Zero(2 * m, 2 * m);
  u.topRightCorner(m, m).setIdentity();
  u.bottomLeftCorner(m, m).setIdentity();
  return u;
}

MatrixXc CarInstance::gamma_conj(const MatrixXc& a) const { return gamma_u * a.conjugate() * gamma_u.conjugate(); }

VectorXcd CarInstance::gamma(const VectorXcd& v) const { return gamma_u * v.conjugate(); }

bool CarInstance::has_standard_gamma(double tol) const { return max_abs(gamma_u - standard_gamma(m)) <= tol; }

void CarInstance::validate(double tol) const {
  const Index d = dim();
  if (m < 1) throw InvalidArgument("CarInstance: m must be positive");
  for (const MatrixXc* a : {&gamma_u, &R, &T})
    if (a->rows() != d || a->cols() != d) throw InvalidArgument("CarInstance: matrices must be 2m x 2m");
  const MatrixXc id = MatrixXc::Identity(d, d);
  if (max_abs(gamma_u.adjoint() * gamma_u - id) > tol) throw InvalidArgument("CarInstance: U is not unitary");
  if (max_abs(gamma_u * gamma_u.conjugate() - id) > tol) throw InvalidArgument("CarInstance: Gamma^2 != 1");
  if (max_abs(R - R.adjoint()) > tol) throw InvalidArgument("CarInstance: R is not hermitian");
  if (max_abs(T - T.adjoint()) > tol) throw InvalidArgument("CarInstance: T is not hermitian");
  const Eigen::VectorXd ev = hermitian_eigenvalues(R);
  if (ev.minCoeff() < -tol || ev.maxCoeff() > 1.0 + tol) throw InvalidArgument("CarInstance: R not within [0, 1]");
  if (max_abs(R + gamma_conj(R) - id) > tol) throw InvalidArgument("CarInstance: R + Gamma R Gamma != 1");
  if (max_abs(T + gamma_conj(T)) > tol) throw InvalidArgument("CarInstance: T + Gamma T Gamma != 0");
}

CarInstance random_instance(std::mt19937_64& rng, int m, const RandomInstanceOptions& opts) {
  if (m < 1) throw InvalidArgument("random_instance: m must be positive");
  CarInstance inst;
  inst.m = m;
  inst.gamma_u = standard_gamma(m);
  const Index d = 2 * m;

  // W = exp(iH) with Gamma H Gamma = -H commutes with Gamma.
  const MatrixXc a = random_hermitian(rng, d);
  const MatrixXc h = a - inst.gamma_conj(a);
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  VectorXcd phases(d);
  for (Index i = 0; i < d; ++i) phases(i) = std::exp(I * es.eigenvalues()(i));
  const MatrixXc w = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd diag(d);
  for (int i = 0; i < m; ++i) {
    const double r = unit(rng);
    diag(i) = r;
    diag(m + i) = 1.0 - r;
  }
  inst.R = w * diag.cast<cplx>().asDiagonal() * w.adjoint();
  inst.R = (inst.R + inst.R.adjoint()) / 2.0;

  inst.T = MatrixXc::Zero(d, d);
  if (!opts.zero_t) {
    const MatrixXc b = random_hermitian(rng, d);
    MatrixXc t = (b - inst.gamma_conj(b)) / 2.0;
    t = (t + t.adjoint()) / 2.0;
    const double norm = trace_norm(t);
    if (norm > 0) inst.T = t * (opts.t_trace_norm_max * std::max(unit(rng), 0.1) / norm);
  }
  return inst;
}

nlohmann::json to_json(const CarInstance& inst) {
  return {{"m", inst.m},
          {"gamma_u", matrix_to_json(inst.gamma_u)},
          {"R", matrix_to_json(inst.R)},
          {"T", matrix_to_json(inst.T)}};
}

CarInstance car_instance_from_json(const nlohmann::json& j) {
  CarInstance inst;
  if (j.contains("m"))
    inst.m = j.at("m").get<int>();
  else if (j.contains("dim"))
    inst.m = j.at("dim").get<int>() / 2;
  else
    throw InvalidArgument("CarInstance: need \"m\" or \"dim\"");
  inst.gamma_u = j.contains("gamma_u") ? matrix_from_json(j.at("gamma_u")) : standard_gamma(inst.m);
  inst.R = matrix_from_json(j.at("R"));
  inst.T = j.contains("T") ? matrix_from_json(j.at("T")) : MatrixXc::Zero(2 * inst.m, 2 * inst.m);
  inst.validate();
  return inst;
}

SpectralSplit spectral_split(const CarInstance& inst, double spectral_tol) {
  const Index d = inst.dim();
  SpectralSplit sp;
  sp.S = inst.R + inst.T;
  sp.S = (sp.S + sp.S.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(sp.S);
  const Eigen::VectorXd ev = es.eigenvalues();
  const MatrixXc& vecs = es.eigenvectors();

  std::vector<Index> c0, c1, c2;
  for (Index i = 0; i < d; ++i) {
    const double x = ev(i);
    if (std::abs(x) <= spectral_tol || std::abs(x - 1.0) <= spectral_tol) {
      sp.warnings.push_back("degenerate split: eigenvalue " + std::to_string(x) + " assigned to P1");
      c1.push_back(i);
    } else if (x < 0.0) {
      c0.push_back(i);
    } else if (x > 1.0) {
      c2.push_back(i);
    } else {
      c1.push_back(i);
    }
  }
  sp.P0 = eigen_projector(vecs, c0);
  sp.P1 = eigen_projector(vecs, c1);
  sp.P2 = eigen_projector(vecs, c2);
  sp.S0 = sp.S * sp.P0;
  sp.S1 = sp.S * sp.P1;
  sp.S2 = sp.S * sp.P2;
  sp.X = sp.S1 + sp.P2;
  sp.Y = sp.S0 + sp.S2 - sp.P2;

  sp.Y_clipped = MatrixXc::Zero(d, d);
  sp.trace_abs_Y = 0.0;
  for (Index c : c0) {
    sp.Y_clipped += std::max(ev(c), -0.5) * vecs.col(c) * vecs.col(c).adjoint();
    sp.trace_abs_Y += std::abs(ev(c));
  }
  for (Index c : c2) {
    const double lam = ev(c) - 1.0;
    sp.Y_clipped += std::min(lam, 0.5) * vecs.col(c) * vecs.col(c).adjoint();
    sp.trace_abs_Y += lam;
    sp.e.push_back(vecs.col(c));
    sp.lambda.push_back(lam);
    if (lam >= 0.5) {
      sp.c_plus *= (1.0 + lam) * (1.0 + lam);
      sp.c_minus *= 4.0;
    }
  }
  sp.c = std::exp(2.0 * sp.trace_abs_Y) * sp.c_plus * sp.c_minus;

  const SplitInvariants inv = check_invariants(inst, sp);
  if (inv.worst() > 1e-8) throw NumericalError("spectral_split: invariants fail", inv.worst());
  return sp;
}

double SplitInvariants::worst() const {
  return std::max({gamma_p0_p2, gamma_p1, x_bounds, gamma_x, gamma_y, p0_block, eigenbasis});
}

SplitInvariants check_invariants(const CarInstance& inst, const SpectralSplit& sp) {
  const Index d = inst.dim();
  const MatrixXc id = MatrixXc::Identity(d, d);
  SplitInvariants inv;
  inv.gamma_p0_p2 = max_abs(inst.gamma_conj(sp.P0) - sp.P2);
  inv.gamma_p1 = max_abs(inst.gamma_conj(sp.P1) - sp.P1);
  {
    const Eigen::VectorXd ev = hermitian_eigenvalues(sp.X);
    inv.x_bounds = std::max({0.0, -ev.minCoeff(), ev.maxCoeff() - 1.0});
  }
  inv.gamma_x = max_abs(inst.gamma_conj(sp.X) - (id - sp.X));
  inv.gamma_y = max_abs(inst.gamma_conj(sp.Y) + sp.Y);
  {
    const MatrixXc r0 = sp.P0 * inst.R * sp.P0, t0 = sp.P0 * inst.T * sp.P0;
    inv.p0_block = std::max(psd_violation(r0), psd_violation(-t0 - r0));
  }
  {
    const Index k = Index(sp.e.size());
    MatrixXc v(d, 2 * k);
    for (Index j = 0; j < k; ++j) {
      v.col(j) = sp.e[std::size_t(j)];
      v.col(k + j) = inst.gamma(sp.e[std::size_t(j)]);
    }
    double worst = k ? max_abs(v.adjoint() * v - MatrixXc::Identity(2 * k, 2 * k)) : 0.0;
    for (Index j = 0; j < k; ++j) {
      const double lam = sp.lambda[std::size_t(j)];
      worst = std::max(worst, (sp.Y * v.col(j) - lam * v.col(j)).cwiseAbs().maxCoeff());
      worst = std::max(worst, (sp.Y * v.col(k + j) + lam * v.col(k + j)).cwiseAbs().maxCoeff());
    }
    inv.eigenbasis = worst;
  }
  return inv;
}

namespace {

// side: 0 absent, 1 in J2 (p_{j,0}), 2 in J0 (p_{j,1}).
double domination_ratio(const SpectralSplit& sp, const std::vector<int>& side) {
  double lhs = 1.0, rhs = 1.0;
  for (std::size_t j = 0; j < side.size(); ++j) {
    const double lam = sp.lambda[j], clipped = std::min(lam, 0.5);
    if (side[j] == 1) {
      lhs *= 1.0 + lam;
      rhs *= 1.0 - clipped;
    } else if (side[j] == 2) {
      lhs *= lam;
      rhs *= clipped;
    }
  }
  return lhs / (sp.c * rhs);
}

}  // namespace

DominationResult domination_check(const SpectralSplit& split, std::uint64_t seed, long max_exhaustive) {
  const std::size_t k = split.lambda.size();
  DominationResult res;
  std::vector<int> side(k, 0);
  long total = 1;
  bool small = true;
  for (std::size_t j = 0; j < k && small; ++j) {
    total *= 3;
    small = total <= max_exhaustive;
  }
  if (small) {
    for (long idx = 0; idx < total; ++idx) {
      long rest = idx;
      for (std::size_t j = 0; j < k; ++j, rest /= 3) side[j] = int(rest % 3);
      res.worst_ratio = std::max(res.worst_ratio, domination_ratio(split, side));
      ++res.monomials;
    }
    return res;
  }
  res.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 2);
  for (long s = 0; s < 10000; ++s) {
    for (auto& v : side) v = pick(rng);
    res.worst_ratio = std::max(res.worst_ratio, domination_ratio(split, side));
    ++res.monomials;
  }
  return res;
}

namespace {

// Jordan-Wigner sign for acting on mode i of basis state n.
inline double jw_sign(unsigned long n, int i) { return (std::popcount(n & ((1UL << i) - 1UL)) % 2) ? -1.0 : 1.0; }

// Majorana c_a on |n>: a = 2i gives a_i + a_i^*, a = 2i+1 gives -i a_i + i a_i^*.
inline void apply_majorana(int a, unsigned long& n, cplx& phase) {
  const int i = a / 2;
  const bool occupied = (n >> i) & 1UL;
  phase *= jw_sign(n, i);
  if (a % 2) phase *= occupied ? -I : I;
  n ^= 1UL << i;
}

}  // namespace

FockSpace::FockSpace(int m) : m_(m) {
  if (m < 1 || m > 10) throw InvalidArgument("FockSpace: need 1 <= m <= 10");
  const Index d = Index(1) << m;
  for (int i = 0; i < m; ++i) {
    MatrixXc a = MatrixXc::Zero(d, d);
    for (unsigned long n = 0; n < (1UL << m); ++n)
      if ((n >> i) & 1UL) a(Index(n ^ (1UL << i)), Index(n)) = jw_sign(n, i);
    a_.push_back(std::move(a));
  }
}

MatrixXc FockSpace::field(const VectorXcd& v) const {
  if (v.size() != 2 * m_) throw InvalidArgument("FockSpace::field: vector size must be 2m");
  MatrixXc out = MatrixXc::Zero(dim(), dim());
  for (int i = 0; i < m_; ++i) out += v(i) * a_[std::size_t(i)] + v(m_ + i) * a_[std::size_t(i)].adjoint();
  return out;
}

MatrixXc majorana_basis(int m) {
  MatrixXc w = MatrixXc::Zero(2 * m, 2 * m);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < m; ++i) {
    w(i, 2 * i) = s;
    w(m + i, 2 * i) = s;
    w(i, 2 * i + 1) = -I * s;
    w(m + i, 2 * i + 1) = I * s;
  }
  return w;
}

FockDensity fock_functional(const MatrixXc& symbol, int m) {
  if (m < 1 || m > 10) throw InvalidArgument("fock_functional: need 1 <= m <= 10");
  const Index d = 2 * m;
  if (symbol.rows() != d || symbol.cols() != d) throw InvalidArgument("fock_functional: symbol must be 2m x 2m");
  CarInstance shape;
  shape.m = m;
  shape.gamma_u = standard_gamma(m);
  if (max_abs(symbol + shape.gamma_conj(symbol) - MatrixXc::Identity(d, d)) > 1e-9)
    throw InvalidArgument("fock_functional: symbol must satisfy S + Gamma S Gamma = 1");

  // M(a, b) = phi(c_a c_b) = <u_a, S u_b>, u_a = sqrt 2 * column a.
  const MatrixXc w = majorana_basis(m);
  const MatrixXc pairs = 2.0 * w.adjoint() * symbol * w;

  const unsigned long states = 1UL << m, subsets = 1UL << d;
  FockDensity out;
  out.rho = MatrixXc::Zero(Index(states), Index(states));
  std::vector<cplx> values(subsets, cplx{});
  std::vector<int> idx;
  for (unsigned long mask = 0; mask < subsets; ++mask) {
    const int k = std::popcount(mask);
    if (k % 2) continue;
    idx.clear();
    for (int a = 0; a < d; ++a)
      if ((mask >> a) & 1UL) idx.push_back(a);
    MatrixXc sub(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub(r, c) = pairs(idx[std::size_t(r)], idx[std::size_t(c)]);
    const cplx value = k ? pfaffian(sub) : cplx(1.0);
    values[mask] = value;
    if (value == cplx{}) continue;
    // Q_A^* = (-1)^{k(k-1)/2} Q_A
    const double sign = ((k * (k - 1) / 2) % 2) ? -1.0 : 1.0;
    const cplx coef = value * sign / double(states);
    for (unsigned long n = 0; n < states; ++n) {
      unsigned long target = n;
      cplx phase = 1.0;
      for (auto it = idx.rbegin(); it != idx.rend(); ++it) apply_majorana(*it, target, phase);
      out.rho(Index(target), Index(n)) += coef * phase;
    }
  }

  // tr(rho Q_A) against phi(Q_A) over every even string.
  for (unsigned long mask = 0; mask < subsets; ++mask) {
    const int k = std::popcount(mask);
    if (k % 2) continue;
    idx.clear();
    for (int a = 0; a < d; ++a)
      if ((mask >> a) & 1UL) idx.push_back(a);
    cplx tr{};
    for (unsigned long n = 0; n < states; ++n) {
      unsigned long target = n;
      cplx phase = 1.0;
      for (auto it = idx.rbegin(); it != idx.rend(); ++it) apply_majorana(*it, target, phase);
      tr += out.rho(Index(n), Index(target)) * phase;
    }
    out.residual = std::max(out.residual, std::abs(tr - values[mask]));
  }
  return out;
}

cplx fock_eval(const FockSpace& fock, const MatrixXc& rho, const std::vector<VectorXcd>& word) {
  MatrixXc prod = MatrixXc::Identity(fock.dim(), fock.dim());
  for (const auto& v : word) prod = prod * fock.field(v);
  return (rho * prod).trace();
}

TestFunction encode_vector(const VectorXcd& w) {
  std::vector<HermiteTerm> terms;
  for (Index c = 0; c < w.size(); ++c)
    if (w(c) != cplx{}) terms.push_back({int(c), 0, 1.0, 0.0, 0.0, w(c)});
  return TestFunction(int(w.size()), std::move(terms));
}

VectorXcd decode_vector(const TestFunction& f) {
  VectorXcd w = VectorXcd::Zero(f.components());
  for (const auto& t : f.terms()) {
    if (t.order != 0 || t.scale != 1.0 || t.shift != 0.0 || t.freq != 0.0)
      throw InvalidArgument("decode_vector: not an encoded vector");
    w(t.component) += t.coeff;
  }
  return w;
}

QuasiFreeFunctional matrix_functional(const MatrixXc& symbol_mode_basis) {
  const int m = int(symbol_mode_basis.rows() / 2);
  const MatrixXc w = majorana_basis(m);
  const MatrixXc s = w.adjoint() * symbol_mode_basis * w;
  QuasiFreeFunctional phi;
  phi.fermi_2pt = [s](const TestFunction& f, const TestFunction& g) {
    return PairValue{decode_vector(f).dot(s * decode_vector(g)), 0.0};
  };
  phi.bose_2pt = [](const TestFunction&, const TestFunction&) -> PairValue {
    throw InvalidArgument("matrix_functional: no bosonic sector");
  };
  return phi;
}

Word matrix_word(const std::vector<VectorXcd>& mode_vectors) {
  Word out = unit_word();
  if (mode_vectors.empty()) return out;
  const MatrixXc w = majorana_basis(int(mode_vectors.front().size() / 2));
  for (const auto& v : mode_vectors) out = out * fermion(encode_vector(w.adjoint() * v));
  return out;
}

std::vector<JordanLevel> jordan_norms(const CarInstance& inst, const std::vector<int>& sub_dims) {
  if (!inst.has_standard_gamma()) throw InvalidArgument("jordan_norms: needs the standard conjugation");
  const MatrixXc s = inst.R + inst.T;
  std::vector<JordanLevel> out;
  int prev = 0;
  for (int k : sub_dims) {
    if (k < 1 || k > inst.m || k < prev) throw InvalidArgument("jordan_norms: sub_dims must be nested within 1..m");
    prev = k;
    std::vector<Index> rows;
    for (int i = 0; i < k; ++i) rows.push_back(i);
    for (int i = 0; i < k; ++i) rows.push_back(inst.m + i);
    MatrixXc sk(2 * k, 2 * k);
    for (Index r = 0; r < 2 * k; ++r)
      for (Index c = 0; c < 2 * k; ++c) sk(r, c) = s(rows[std::size_t(r)], rows[std::size_t(c)]);
    const FockDensity fd = fock_functional(sk, k);
    const Eigen::VectorXd ev = hermitian_eigenvalues(fd.rho);
    JordanLevel lvl;
    lvl.modes = k;
    for (Index i = 0; i < ev.size(); ++i) (ev(i) > 0 ? lvl.positive : lvl.negative) += std::abs(ev(i));
    lvl.norm = lvl.positive + lvl.negative;
    lvl.singular_norm = trace_norm(fd.rho);
    lvl.trace = fd.rho.trace().real();
    lvl.solve_residual = fd.residual;
    out.push_back(lvl);
  }
  return out;
}

std::optional<NonIsotonyWitness> non_isotony_search(std::uint64_t seed, int trials, int max_modes,
                                                    double min_margin) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_m(2, std::max(2, max_modes));
  for (int t = 0; t < trials; ++t) {
    const int m = pick_m(rng);
    CarInstance inst = random_instance(rng, m);
    std::vector<int> dims;
    for (int k = 1; k <= m; ++k) dims.push_back(k);
    auto levels = jordan_norms(inst, dims);
    int lo = 0, hi = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (std::size_t j = i + 1; j < levels.size(); ++j)
        if (levels[j].norm - levels[i].norm > best) {
          best = levels[j].norm - levels[i].norm;
          lo = int(i);
          hi = int(j);
        }
    if (best > min_margin) return NonIsotonyWitness{std::move(inst), std::move(levels), lo, hi, best, t + 1};
  }
  return std::nullopt;
}

double powers_stormer_slack(const MatrixXc& x, const MatrixXc& y) {
  const double lhs = (psd_sqrt(x) - psd_sqrt(y)).squaredNorm();
  return trace_norm(x - y) - lhs;
}

double powers_stormer_check(int n, int trials, std::uint64_t seed) {
  if (n < 1 || n > 64) throw InvalidArgument("powers_stormer_check: need 1 <= n <= 64");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> rank(1, n);
  auto random_psd = [&] {
    const int r = rank(rng);
    MatrixXc a(n, r);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < r; ++j) a(i, j) = cplx(g(rng), g(rng));
    return MatrixXc(a * a.adjoint() / double(n));
  };
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) worst = std::min(worst, powers_stormer_slack(random_psd(), random_psd()));
  return worst;
}

double product_formula_fock_residual(const CarInstance& inst, const SpectralSplit& sp) {
  const int k = int(sp.e.size());
  if (k == 0) return 0.0;
  if (k > 8) throw InvalidArgument("product_formula_fock_residual: at most 8 eigenvalues");
  // In the basis (e_1..e_k, Gamma e_1..Gamma e_k) Gamma is the standard swap.
  MatrixXc v(inst.dim(), 2 * k);
  for (int j = 0; j < k; ++j) {
    v.col(j) = sp.e[std::size_t(j)];
    v.col(k + j) = inst.gamma(sp.e[std::size_t(j)]);
  }
  const MatrixXc plus = v.adjoint() * (sp.X + sp.Y) * v;
  const MatrixXc minus = v.adjoint() * (sp.X - sp.Y_clipped) * v;
  const MatrixXc rho_plus = fock_functional(plus, k).rho, rho_minus = fock_functional(minus, k).rho;

  double worst = 0.0;
  long total = 1;
  for (int j = 0; j < k; ++j) total *= 3;
  for (long idx = 0; idx < total; ++idx) {
    // p_{j,0} = a_j^* a_j, p_{j,1} = a_j a_j^*: diagonal in the occupation basis.
    cplx fp{}, fm{};
    double lhs = 1.0, rhs = 1.0;
    std::vector<int> side(static_cast<std::size_t>(k));
    long rest = idx;
    for (int j = 0; j < k; ++j, rest /= 3) {
      side[std::size_t(j)] = int(rest % 3);
      const double lam = sp.lambda[std::size_t(j)], clipped = std::min(lam, 0.5);
      if (side[std::size_t(j)] == 1) lhs *= 1.0 + lam, rhs *= 1.0 - clipped;
      if (side[std::size_t(j)] == 2) lhs *= -lam, rhs *= clipped;
    }
    for (unsigned long n = 0; n < (1UL << k); ++n) {
      bool keep = true;
      for (int j = 0; j < k && keep; ++j) {
        const bool occ = (n >> j) & 1UL;
        keep = !(side[std::size_t(j)] == 1 && !occ) && !(side[std::size_t(j)] == 2 && occ);
      }
      if (!keep) continue;
      fp += rho_plus(Index(n), Index(n));
      fm += rho_minus(Index(n), Index(n));
    }
    worst = std::max({worst, std::abs(fp - lhs), std::abs(fm - rhs)});
  }
  return worst;
}

}  // namespace skms
