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

#include <memory>
#include <string>
#include <vector>

#include "nsk/model.hpp"
#include "nsk/paley.hpp"

namespace nsk {

enum class Scheme { ExpEuler, ExpRk2, Picard };
enum class SystemVariant { RhoForm, Nhv1, Effective, Perturbation, Heat };

struct StepperConfig {
  double dt = 1e-3;
  double T = 0.1;
  Scheme scheme = Scheme::ExpRk2;
  int picard_iters = 5;
  int snapshot_stride = 1;
  void validate() const;
};

struct Trajectory {
  std::vector<FluidState> snapshots;
  NormSeries diagnostics;
  bool aborted = false;
  std::string abort_reason;
};

struct SimulationSetup {
  SystemVariant variant = SystemVariant::Nhv1;
  Params params;
  Grid grid;
  FluidState initial;      // (q, u); for Effective the u slot carries v
  SpectralField rho1_0;    // heat background of the Perturbation variant
  StepperConfig stepper;
  std::vector<BesovSpec> besov_diagnostics;
  bool mute_nonlinearity = false;

  void validate() const;
};

/// Exact spectral heat evolution with max principle and mean conservation.
SpectralField solve_heat(const SpectralField& rho0, double mu, double t);

/// Internal unknowns -> physical (q = ln rho, u) for diagnostics.
FluidState to_physical(const SimulationSetup& setup, const FluidState& s);

/// Exponential integrator built on the exact per-mode symbol exponential of
/// the variant's linear part; only the nonlinear remainder is explicit.
/// Per-mode operators (e^{dtL}, dt*phi1, dt*phi2) are cached at construction
/// for the fixed step size.
class ExponentialStepper {
 public:
  ExponentialStepper(const SimulationSetup& setup);
  ~ExponentialStepper();

  FluidState step(const FluidState& s) const;
  /// e^{tL} s (nonlinearity muted), any t >= 0.
  FluidState linear_flow(const FluidState& s, double t) const;
  /// Nonlinear remainder N(s) of the variant at the given time.
  Rhs nonlinearity(const FluidState& s, double time) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Trajectory simulate(const SimulationSetup& setup);

/// Picard iteration mirroring the fixed-point map: iterate n is the linear
/// flow of the data plus the Duhamel integral (trapezoid over the stored
/// history) of the nonlinearity of iterate n-1.
struct PicardResult {
  std::vector<double> ratios;        // r_n = |delta_n| / |delta_{n-1}|, n >= 2
  std::vector<double> iterate_norms; // discrete F_T norm per iterate
  std::vector<FluidState> final_iterate;  // on the uniform quadrature grid
  FluidState limit_at_T;
  bool contracting = false;
  bool diverged = false;
};
PicardResult picard_solve(const FluidState& s0, double T, int n_iter,
                          const Params& params, int nsteps);

}  // namespace nsk
