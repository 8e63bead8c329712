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
#include <vector>

#include "nsk/field.hpp"

namespace nsk {

/// Constant coefficients of the linearized systems
///   d/dt q + div u = 0
///   d/dt u - a lap u - b grad div u - c grad lap q + d grad q = 0
/// (d = 0 drops the pressure term).  nu = a + b is the effective
/// longitudinal viscosity (2 mu + lambda for the physical coefficients).
struct LinearCoeffs {
  double a = 1.0;  // momentum diffusion (mu)
  double b = 0.0;  // lambda + mu
  double c = 1.0;  // capillarity
  double d = 0.0;  // pressure stiffness (K or P'(1))

  double nu() const { return a + b; }
  void validate() const;
};

struct Mat2 {
  double m[2][2];
  static Mat2 identity();
};

/// exp(-t A(xi)) with A = [[0, -|xi|^2], [c |xi|^2, nu |xi|^2]] acting on
/// (lap q, div u); the three regimes (trigonometric nu^2 < 4c, resonant
/// nu^2 = 4c, hyperbolic nu^2 > 4c) use their closed forms.  Requires d = 0.
Mat2 closed_form_exp(double xi2, double t, const LinearCoeffs& lc);

/// Propagator of the potential pair (q^, div u^) at one wavenumber; uses the
/// closed form for d = 0 and a dense matrix exponential otherwise.
Mat2 mode_propagator(double xi2, double t, const LinearCoeffs& lc);

/// Exact linear evolution of a full state: potential sector through
/// mode_propagator, rotational sector through the heat factor exp(-a|xi|^2 t).
FluidState apply_semigroup(const FluidState& s0, double t,
                           const LinearCoeffs& lc);

/// Exponential decay of a single dyadic block under the d = 0 flow.
/// measured_rate is a least-squares log fit over the last half of t_grid;
/// predicted_rate = min(1, 4c/nu^2) * nu * 2^{2l}; c_fit their ratio.
struct DecayReport {
  int block = 0;
  double measured_rate = 0.0;
  double predicted_rate = 0.0;
  double c_fit = 0.0;
};
DecayReport verify_block_decay(const Grid& g, int l, const LinearCoeffs& lc,
                               const std::vector<double>& t_grid,
                               std::uint64_t seed);

/// Dyadic Lyapunov functional
///   k_l^2 = ||u_l||^2 + c ||grad q_l||^2 + 2 alpha int grad q_l . u_l
/// with the positivity guard alpha^2 < c and the 1/2, 3/2 norm-equivalence
/// sandwich enforced (alpha <= sqrt(c)/2).
double dyadic_energy(const FluidState& s, int l, double alpha,
                     const LinearCoeffs& lc);
double dyadic_energy_alpha_max(const LinearCoeffs& lc);  // sqrt(c)/2

/// Reconstruction of q through the heat-kernel Duhamel split
///   q(t) = e^{(c/nu) t lap} q0 - (1/nu) int_0^t e^{(c/nu)(t-s) lap} dc/ds ds,
/// dc/ds = nu div u + c lap q, checked against the direct semigroup, plus the
/// heat max-principle part and the fitted sup-norm constants.
struct DuhamelReport {
  double split_vs_direct_rel = 0.0;  // max over sampled t
  double heat_sup_ratio = 0.0;       // max_t ||e^{.t lap} q0||_inf / ||q0||_inf
  double q_linf_max = 0.0;           // max_t ||q(t)||_inf
  double q0_linf = 0.0;
  double data_norm = 0.0;            // ||(grad q0, u0)||_{B^{N/2-1}_{2,2}}
  double c_fit_linf = 0.0;           // (q_linf_max - q0_linf)+ / data_norm
  double sqrt_t_sup = 0.0;           // max_t sqrt(t) ||(grad q, u)(t)||_inf
  double c_fit_sqrt_t = 0.0;         // sqrt_t_sup / data_norm
};
DuhamelReport duhamel_linf_split(const FluidState& s0, const LinearCoeffs& lc,
                                 double T, int time_samples, int quad_nodes);

/// Numerical check of the semigroup characterization of Besov norms:
///   lhs = || t^s ||e^{B(t)}(grad q0, u0)||_{L^p} ||_{L^r(dt/t)},
///   rhs = ||(grad q0, u0)||_{B^{-2s}_{p,r}}.
struct CharacterizationReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};
CharacterizationReport semigroup_besov_characterization(
    const FluidState& s0, double s, double p, double r, const LinearCoeffs& lc,
    double t_min, double t_max, int t_count);

/// Least-squares slope of log(values) vs t over the last half of the grid
/// (shared by the decay fits).
double fit_log_slope_last_half(const std::vector<double>& t,
                               const std::vector<double>& values);

}  // namespace nsk
