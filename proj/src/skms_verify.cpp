#include "skms_verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"

namespace skms {

namespace {

void require_fermionic(const Word& w, const char* what) {
  for (const auto& g : w.factors)
    if (g.kind != FieldKind::Fermion) throw InvalidArgument(std::string(what) + ": words must be fermionic");
}

}  // namespace

WordValue strip_value(const Word& x, const Word& y, cplx z, const KernelConfig& cfg) {
  require_fermionic(x, "strip_value");
  require_fermionic(y, "strip_value");
  const Word nx = normalize(x), ny = normalize(y);
  const std::size_t n = nx.factors.size() + ny.factors.size();
  if (n % 2) return {};
  std::vector<TestFunction> args;
  for (const auto& g : nx.factors) args.push_back(g.arg);
  for (const auto& g : ny.factors) args.push_back(g.arg);
  const std::size_t split = nx.factors.size();

  MatrixXc a = MatrixXc::Zero(Eigen::Index(n), Eigen::Index(n));
  Eigen::MatrixXd err = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
  for (std::size_t i = 0; i < n; ++i) {
    const TestFunction left = conjugate(args[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool cross = i < split && j >= split;
      const Estimate e = cross ? theta_strip(left, args[j], z, cfg) : theta(left, args[j], cfg);
      a(Eigen::Index(i), Eigen::Index(j)) = e.value;
      err(Eigen::Index(i), Eigen::Index(j)) = e.error;
    }
  }
  const cplx c = nx.coeff * ny.coeff;
  return {c * pfaffian(a), std::abs(c) * pairing_error_bound(a, err)};
}

namespace {

Residual compare_boundary(const Word& x, const Word& y, const Word& right, const KernelConfig& cfg) {
  const auto phi = QuasiFreeFunctional::canonical(cfg);
  const WordValue l = strip_value(x, y, cplx(0.0, 1.0), cfg);
  const WordValue r = mixed_eval(phi, right);
  Residual out;
  out.lhs = l.value;
  out.rhs = r.value;
  out.error = l.error + r.error;
  out.residual = std::abs(l.value - r.value) / std::max({std::abs(l.value), std::abs(r.value), 1.0});
  return out;
}

}  // namespace

Residual boundary_check(const Word& x, const Word& y, const KernelConfig& cfg) {
  return compare_boundary(x, y, y * grade(x), cfg);
}

Residual even_boundary_check(const Word& x, const Word& y, const KernelConfig& cfg) {
  if (!x.is_even()) throw InvalidArgument("even_boundary_check: x must be even");
  return compare_boundary(x, y, y * x, cfg);
}

StripReport growth_scan(const Word& x, const Word& y, const std::vector<double>& t_grid,
                        const std::vector<double>& sigma_grid, const KernelConfig& cfg, std::string pair_id) {
  StripReport rep;
  rep.pair_id = std::move(pair_id);
  std::vector<double> xs, ys;
  for (double sigma : sigma_grid) {
    for (double t : t_grid) {
      const WordValue v = strip_value(x, y, cplx(t, sigma), cfg);
      rep.samples.push_back({rep.pair_id, t, sigma, v.value.real(), v.value.imag(), v.error});
      if (!std::isfinite(std::abs(v.value))) throw NumericalError("growth_scan: non-finite sample", v.error);
      if (std::abs(v.value) > 1e-300) {
        xs.push_back(std::log1p(std::abs(t)));
        ys.push_back(std::log(std::abs(v.value)));
      }
    }
  }
  if (xs.size() >= 2) {
    const double n = double(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / n, my += ys[i] / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    rep.fit_slope = sxx > 0 ? sxy / sxx : 0.0;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (my + rep.fit_slope * (xs[i] - mx));
      ss += r * r;
    }
    rep.fit_rms = std::sqrt(ss / n);
  }
  const double p = std::max(rep.fit_slope, 0.0);
  rep.fitted_p0 = 2 * int(std::ceil(p / 2.0 - 1e-9));
  for (const auto& s : rep.samples) {
    const double mag = std::hypot(s.re_f, s.im_f);
    rep.fitted_c0 = std::max(rep.fitted_c0, mag / std::pow(1.0 + std::abs(s.re_z), rep.fitted_p0));
  }
  return rep;
}

std::vector<CaseRecord> axiom_suite(std::uint64_t seed, const KernelConfig& cfg) {
  std::mt19937_64 rng(seed);
  const auto phi = QuasiFreeFunctional::canonical(cfg);
  RandomTestFunctionOptions copts;
  copts.real = false;
  copts.max_freq = 1.0;
  std::vector<CaseRecord> out;

  out.push_back(near_case("axiom.normalization.unit", mixed_eval(phi, unit_word()).value.real(), 1.0, 0.0, 0.0,
                          "phi(1) = 1 by construction"));

  auto anticommutator = [&](const TestFunction& f) {
    const Word a = adjoint(fermion(f)) * fermion(f);
    const Word b = fermion(f) * adjoint(fermion(f));
    const auto va = mixed_eval(phi, a), vb = mixed_eval(phi, b);
    return WordValue{va.value + vb.value, va.error + vb.error};
  };
  {
    const auto v = anticommutator(hermite(0, 1, 0));
    out.push_back(near_case("axiom.normalization.h0", v.value.real(), 1.0, 1e-9, v.error,
                            "Plancherel: K(p) + K(-p) = 1"));
  }
  {
    double worst = 0.0, err = 0.0;
    for (int i = 0; i < 20; ++i) {
      const TestFunction f = random_test_function(rng, copts);
      const auto v = anticommutator(f);
      const double norm2 = l2_inner(f, f).real();
      worst = std::max(worst, std::abs(v.value - norm2) / norm2);
      err = std::max(err, v.error / norm2);
    }
    out.push_back(bound_case("axiom.normalization.random", worst, 1e-8, err, "Plancherel, exact l2 norm"));
  }
  {
    double worst = 0.0, err = 0.0;
    for (int i = 0; i < 20; ++i) {
      Word w = random_word(rng, 2 + 2 * (i % 2), 2 * (i % 3 == 0), copts);
      w.coeff = cplx(0.6, -0.8);
      const auto a = mixed_eval(phi, adjoint(w)), b = mixed_eval(phi, w);
      worst = std::max(worst, std::abs(a.value - std::conj(b.value)));
      err = std::max(err, a.error + b.error);
    }
    out.push_back(bound_case("axiom.hermiticity", worst, 1e-9, err, "phi(w*) = conj phi(w)"));
  }
  {
    std::uniform_real_distribution<double> tdist(-3, 3);
    double worst = 0.0, err = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Word w = random_word(rng, 4, 0, copts);
      const auto a = mixed_eval(phi, w), b = mixed_eval(phi, translate_all(w, tdist(rng)));
      worst = std::max(worst, std::abs(a.value - b.value) / std::max(std::abs(a.value), 1.0));
      err = std::max(err, a.error + b.error);
    }
    out.push_back(bound_case("axiom.translation", worst, 1e-8, err, "kernel oracle: phase cancels in conj(fhat) ghat"));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Word w = random_word(rng, 2 * (i % 3) + 1, i % 3, copts);
      worst = std::max(worst, std::abs(mixed_eval(phi, w).value));
    }
    out.push_back(bound_case("axiom.gradedness", worst, 0.0, 0.0, "odd words vanish exactly"));
  }
  return out;
}

std::optional<NonpositivityWitness> nonpositivity_search(std::uint64_t seed, int budget, double margin,
                                                         const KernelConfig& cfg) {
  std::mt19937_64 rng(seed);
  RandomTestFunctionOptions opts;
  opts.real = false;
  opts.max_freq = 3.0;
  const auto phi = QuasiFreeFunctional::canonical(cfg);
  for (int i = 0; i < budget; ++i) {
    const TestFunction f = random_test_function(rng, opts);
    const double v = mixed_eval(phi, adjoint(fermion(f)) * fermion(f)).value.real();
    if (v < -margin) return NonpositivityWitness{f, v, i + 1};
  }
  return std::nullopt;
}

}  // namespace skms
