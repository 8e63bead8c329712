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

#include "nsk/stepper.hpp"

namespace nsk {

/// Terms of the physical energy functional
///   int ( 1/2 rho |u|^2 + (Pi(rho) - Pi(1)) + 1/2 kappa(rho) |grad rho|^2 ).
struct EnergyRecord {
  double kinetic = 0.0;
  double potential = 0.0;
  double capillary = 0.0;
  double total = 0.0;
};
EnergyRecord energy(const FluidState& s, const Params& params);

/// Instantaneous viscous dissipation int 2 mu(rho) |D(u)|^2 + lambda(rho)
/// (div u)^2 with D the symmetric gradient.
double dissipation_rate(const FluidState& s, const Params& params);

/// total(t) + accumulated dissipation <= total(0) * (1 + tol); the
/// accumulation is a trapezoid over the snapshot times.
struct DissipationVerdict {
  bool pass = false;
  double max_violation = 0.0;  // relative excess over the initial energy
};
DissipationVerdict dissipation_check(const Trajectory& traj,
                                     const Params& params, double tol);

/// Simulates the base setup and its parabolic rescaling (grid length L/lambda,
/// pressure scaled by lambda^2, dt by lambda^-2) and compares snapshots on
/// shared points.
struct ScalingVerdict {
  bool pass = false;
  double sup_mismatch = 0.0;
  double tol = 0.0;
};
ScalingVerdict scaling_invariance_check(const SimulationSetup& base,
                                        int lambda_scale, double tol);

struct LinfSeries {
  std::vector<double> times;
  std::vector<double> rho_sup;
  std::vector<double> inv_rho_sup;
  std::vector<double> q_sup;
};
LinfSeries linf_monitor(const Trajectory& traj);

}  // namespace nsk
