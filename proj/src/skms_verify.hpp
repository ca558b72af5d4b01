#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"
#include "superderivation.hpp"

namespace skms {

// F_{x,y}(z) = phi(x alpha_z(y)) for fermionic words: pairings inside x or
// inside y are the usual ones, pairings between an x-factor and a y-factor
// are continued to z through theta_strip.
WordValue strip_value(const Word& x, const Word& y, cplx z, const KernelConfig& cfg = {});

// phi(x alpha_i(y)) against phi(y gamma(x)); residual |L-R| / max(|L|,|R|,1).
Residual boundary_check(const Word& x, const Word& y, const KernelConfig& cfg = {});

// Same left side against phi(y x) with no grading sign: for even x the two
// right sides coincide, which is the plain KMS condition on even elements.
Residual even_boundary_check(const Word& x, const Word& y, const KernelConfig& cfg = {});

struct StripReport {
  std::string pair_id;
  std::vector<StripSample> samples;
  double boundary_residual = 0.0;
  double fitted_c0 = 0.0;
  int fitted_p0 = 0;
  double fit_slope = 0.0;
  double fit_rms = 0.0;
};

// Samples |F_{x,y}(t + i sigma)| on the grid and fits
// log|F| = log C0 + p log(1 + |t|); p0 is the least even integer >= p.
StripReport growth_scan(const Word& x, const Word& y, const std::vector<double>& t_grid,
                        const std::vector<double>& sigma_grid, const KernelConfig& cfg = {},
                        std::string pair_id = "pair");

// Hermiticity, normalization, translation invariance and gradedness over
// seeded random words.
std::vector<CaseRecord> axiom_suite(std::uint64_t seed, const KernelConfig& cfg = {});

struct NonpositivityWitness {
  TestFunction f;
  double value = 0.0;  // phi(F(f)* F(f))
  int tries = 0;
};

// Randomized search for F(f) with phi(F(f)* F(f)) < -margin.
std::optional<NonpositivityWitness> nonpositivity_search(std::uint64_t seed, int budget, double margin = 1e-6,
                                                         const KernelConfig& cfg = {});

}  // namespace skms
