/***********************************************************************
*  Copyright 2026 the nsk authors
*
*  Licensed under the Apache License, Version 2.0 (the "License");
*  you may not use this file except in compliance with the License.
*  You may obtain a copy of the License at
*
*      http://www.apache.org/licenses/LICENSE-2.0
*
*  Unless required by applicable law or agreed to in writing, software
*  distributed under the License is distributed on an "AS IS" BASIS,
*  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
*  implied. See the License for the specific language governing
*  permissions and limitations under the License.
***********************************************************************/

#pragma once

#include <cstdint>

#include "nsk/field.hpp"

namespace nsk {

/// Periodized |x|^{-sigma} with a one-cell mollified core and a smooth
/// far-field window; sigma in (0, dim).  Its mid-band dyadic L2 norms obey
/// the flat 2^{j(sigma - N/2)} law.
SpectralField homogeneous_profile(double sigma, const Grid& g);

/// High-pass (keep |xi| >= 2^{l0}) of the periodized |x|^{-(1-eps)} profile.
struct TruncatedProfile {
  SpectralField u0;
  double norm_besov_inf = 0.0;  // B^{N/2-1}_{2,inf}
  double norm_besov_r = 0.0;    // B^{N/2-1}_{2,r}
};
TruncatedProfile truncated_profile(double epsilon, int l0, const Grid& g,
                                   double r);

/// Single shrunk copy phi(lambda x) around the cell center; lambda a power of
/// two so the scaled samples land on grid points.  phi should be localized
/// well inside the cell (a bump), otherwise the copy is truncated.
SpectralField scaled_profile(const SpectralField& phi, int lambda_scale);

/// 1 + amplitude * exp(-|x - center|^2 / (2 w^2)) with w = width_frac * L.
SpectralField gaussian_bump(const Grid& g, double amplitude,
                            double width_frac);
/// Zero-mean smooth bump (no +1 offset), for velocity components etc.
SpectralField centered_bump(const Grid& g, double amplitude, double width_frac);

/// Near-discontinuous density: 1 -> 1+height across a double step smoothed
/// over `smoothing_cells` cells (periodic, so the jump goes up and back down).
SpectralField density_jump(const Grid& g, double location_frac, double height,
                           double smoothing_cells);

/// Composite quasi-solution data: q0 = ln(rho1_0) + h2_0,
/// u0 = -mu grad ln(rho1_0) + u2_0.
FluidState quasi_solution_data(const SpectralField& rho1_0,
                               const SpectralField& h2_0,
                               const SpectralField& u2_0, double mu);
/// Inverse of the above given rho1_0.
void split_quasi_solution_data(const FluidState& s, const SpectralField& rho1_0,
                               double mu, SpectralField* h2_0,
                               SpectralField* u2_0);

/// Seeded band-limited noise: independent modes with kmin <= |k| <= kmax,
/// normalized to the requested L2 amplitude.  Deterministic in the seed.
SpectralField random_band_limited(const Grid& g, int rank, int kmin, int kmax,
                                  double amplitude, std::uint64_t seed);

/// Random smooth positive density 1 + perturbation (min >= floor + margin).
SpectralField random_positive_density(const Grid& g, double amplitude,
                                      std::uint64_t seed);

}  // namespace nsk
