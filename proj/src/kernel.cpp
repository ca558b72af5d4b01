#include "kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"

namespace skms {

namespace {

constexpr double kPi = std::numbers::pi;

// Adaptive Gauss-Kronrod over [a, b] cut into panels of at most `width`.
// Fails when the summed error exceeds `budget`.
Estimate integrate(const std::function<cplx(double)>& fn, double a, double b, double width, double rel_tol,
                   int max_depth, double budget, const char* what) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  Estimate out;
  if (!(b > a)) return out;
  const int panels = std::clamp(int(std::ceil((b - a) / width)), 1, 256);
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    double err = 0.0;
    const double lo = a + i * h;
    const double hi = (i + 1 == panels) ? b : lo + h;
    out.value += GK::integrate(fn, lo, hi, max_depth, rel_tol, &err);
    out.error += err;
  }
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()) || out.error > budget) {
    throw NumericalError(std::string(what) + ": quadrature did not reach its error budget", out.error);
  }
  return out;
}

// q / (1 - e^{-q}), equal to 1 at q = 0.
double q_times_K(double q) {
  if (q == 0.0) return 1.0;
  return q / -std::expm1(-q);
}

// Pointwise sum_c conj(fhat_c(p)) ghat_c(p).
struct SpectralProduct {
  TestFunction fhat, ghat;
  cplx operator()(double p) const {
    cplx s{};
    for (int c = 0; c < fhat.components(); ++c) s += std::conj(fhat(p, c)) * ghat(p, c);
    return s;
  }
};

double momentum_cutoff(const TestFunction& fhat, const TestFunction& ghat, const KernelConfig& cfg) {
  if (cfg.p_max > 0.0) return std::max(cfg.p_max, 10.0);
  const double tol = std::min(cfg.quad_rel_tol, 1e-6) * 1e-2;
  const double r = std::min(effective_radius(fhat, tol), effective_radius(ghat, tol));
  return std::max(r, 10.0);
}

// Natural magnitude for error budgets: the product of term norms bounds
// every kernel value up to O(1) factors.
double magnitude(const TestFunction& f, const TestFunction& g) {
  return std::max(f.term_norm() * g.term_norm(), 1e-300);
}

void check_components(const TestFunction& f, const TestFunction& g, const char* what) {
  if (f.components() != g.components()) throw InvalidArgument(std::string(what) + ": component count mismatch");
}

double budget(const KernelConfig& cfg, double scale) { return std::max(100.0 * cfg.quad_rel_tol, 1e-13) * scale; }

}  // namespace

double kernel_K(double p) { return 1.0 / -std::expm1(-p); }

Estimate theta_strip(const TestFunction& f, const TestFunction& g, cplx z, const KernelConfig& cfg) {
  check_components(f, g, "theta_strip");
  const double y = z.imag(), t = z.real();
  if (y < 0.0 || y > 1.0 || !std::isfinite(t)) throw InvalidArgument("theta_strip: z must lie in 0 <= Im z <= 1");
  if (f.is_zero() || g.is_zero()) return {};
  const SpectralProduct h{fourier(f), fourier(g)};
  const double pmax = momentum_cutoff(h.fhat, h.ghat, cfg);

  // PV int G(p)/p dp with G(p) = pK(p) e^{izp} h(p), folded onto q > 0.
  // The two halves are written with decaying exponentials only.
  // Gauss-Kronrod nodes are interior, so q = 0 is never sampled.
  auto folded = [&](double q) -> cplx {
    const double w = q_times_K(q);
    const cplx plus = std::exp(cplx(-y * q, t * q)) * h(q);
    const cplx minus = std::exp(cplx((y - 1.0) * q, -t * q)) * h(-q);
    return w * (plus - minus) / q;
  };
  return integrate(folded, 0.0, pmax, 2.0, cfg.quad_rel_tol, cfg.max_depth, budget(cfg, magnitude(f, g)),
                   "theta");
}

Estimate theta(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg) {
  return theta_strip(f, g, cplx{}, cfg);
}

Estimate theta_pv_epsilon(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg) {
  check_components(f, g, "theta_pv_epsilon");
  if (f.is_zero() || g.is_zero()) return {};
  const SpectralProduct h{fourier(f), fourier(g)};
  const double pmax = momentum_cutoff(h.fhat, h.ghat, cfg);
  auto excluded = [&](double eps) {
    auto both = [&](double q) -> cplx { return kernel_K(q) * h(q) + kernel_K(-q) * h(-q); };
    return integrate(both, eps, pmax, 2.0, cfg.quad_rel_tol, cfg.max_depth, budget(cfg, magnitude(f, g) / eps),
                     "theta_pv_epsilon");
  };
  // I(eps) = I + c1 eps + c3 eps^3 + ...: two Richardson steps.
  const double e0 = cfg.pv_window;
  const Estimate a = excluded(e0), b = excluded(e0 / 2), c = excluded(e0 / 4);
  const cplx r1 = 2.0 * b.value - a.value;
  const cplx r2 = 2.0 * c.value - b.value;
  Estimate out;
  out.value = (8.0 * r2 - r1) / 7.0;
  out.error = std::abs(out.value - r2) + a.error + b.error + c.error;
  return out;
}

Estimate vacuum_2pt(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg) {
  check_components(f, g, "vacuum_2pt");
  if (f.is_zero() || g.is_zero()) return {};
  const SpectralProduct h{fourier(f), fourier(g)};
  const double pmax = momentum_cutoff(h.fhat, h.ghat, cfg);
  return integrate(h, 0.0, pmax, 2.0, cfg.quad_rel_tol, cfg.max_depth, budget(cfg, magnitude(f, g)), "vacuum_2pt");
}

Estimate t_correction_2pt(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg) {
  check_components(f, g, "t_correction_2pt");
  if (f.is_zero() || g.is_zero()) return {};
  // k(u)/(2 pi) = -(i/2)(coth(pi u) - 1/(pi u)), odd and regular at 0.
  auto kernel = [](double u) -> cplx {
    const double x = kPi * u;
    double c;
    if (std::abs(x) < 1e-2) {
      const double x2 = x * x;
      c = x * (1.0 / 3.0 - x2 / 45.0 + 2.0 * x2 * x2 / 945.0);
    } else {
      c = 1.0 / std::tanh(x) - 1.0 / x;
    }
    return {0.0, -0.5 * c};
  };
  auto integrand = [&](double u) -> cplx { return kernel(u) * l2_inner(translate(f, -u), g); };
  const double tol = std::min(cfg.quad_rel_tol, 1e-6) * 1e-2;
  const double umax = effective_radius(f, tol) + effective_radius(g, tol);
  const double b = budget(cfg, magnitude(f, g) * std::max(1.0, umax));
  Estimate lo = integrate(integrand, -umax, 0.0, 2.0, cfg.quad_rel_tol, cfg.max_depth, b, "t_correction_2pt");
  Estimate hi = integrate(integrand, 0.0, umax, 2.0, cfg.quad_rel_tol, cfg.max_depth, b, "t_correction_2pt");
  return {lo.value + hi.value, lo.error + hi.error};
}

Estimate bosonic_2pt(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg) {
  Estimate e = theta(f, derivative(g), cfg);
  e.value *= cplx(0.0, 1.0);
  return e;
}

double strip_cauchy_riemann_residual(const TestFunction& f, const TestFunction& g, cplx z, double h,
                                     const KernelConfig& cfg) {
  if (!(z.imag() - h >= 0.0 && z.imag() + h <= 1.0))
    throw InvalidArgument("strip_cauchy_riemann_residual: stencil leaves the strip");
  auto F = [&](cplx w) { return theta_strip(f, g, w, cfg).value; };
  const cplx dx = (F(z + h) - F(z - h)) / (2.0 * h);
  const cplx dy = (F(z + cplx(0.0, h)) - F(z - cplx(0.0, h))) / (2.0 * h);
  // analytic: dF/dy = i dF/dx
  return std::abs(dy - cplx(0.0, 1.0) * dx) / std::max(1.0, std::abs(F(z)));
}

}  // namespace skms
