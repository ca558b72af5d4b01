#pragma once

#include <complex>

#include "testfn.hpp"

namespace skms {

struct KernelConfig {
  double quad_rel_tol = 1e-10;
  double pv_window = 1e-3;  // starting exclusion for the epsilon cross-check
  double p_max = 0.0;       // 0 = choose from the test functions' decay
  int max_depth = 15;
};

// A quadrature result with its error estimate.
struct Estimate {
  cplx value{};
  double error = 0.0;
};

// 1 / (1 - e^{-p}); p = 0 is a pole.
double kernel_K(double p);

// theta(f, g) = PV int K(p) conj(fhat(p)) ghat(p) dp.
Estimate theta(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg = {});

// PV int e^{izp} K(p) conj(fhat) ghat dp for 0 <= Im z <= 1.  At real z = t
// this equals theta(f, translate(g, t)).
Estimate theta_strip(const TestFunction& f, const TestFunction& g, cplx z, const KernelConfig& cfg = {});

// Same principal value taken as a symmetric-exclusion limit with Richardson
// extrapolation in the excluded half-width.  Slower; kept as a cross-check.
Estimate theta_pv_epsilon(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg = {});

// <f, P+ g> = int_0^inf conj(fhat) ghat dp.
Estimate vacuum_2pt(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg = {});

// <f, T g> evaluated in position space,
//   (1/2pi) int k(u) <f(. + u), g> du,  k(u) = -i (pi coth(pi u) - 1/u),
// which does not touch the momentum-space principal value.
Estimate t_correction_2pt(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg = {});

// i * theta(f, g').
Estimate bosonic_2pt(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg = {});

// Discrete Cauchy-Riemann residual of z -> theta_strip(f, g, z) at an
// interior point with step h, relative to max(1, |value|).
double strip_cauchy_riemann_residual(const TestFunction& f, const TestFunction& g, cplx z, double h,
                                     const KernelConfig& cfg = {});

}  // namespace skms
