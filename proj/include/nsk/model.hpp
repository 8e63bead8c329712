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

#include <functional>

#include "nsk/field.hpp"
#include "nsk/linear.hpp"

namespace nsk {

enum class CapillarityForm { Constant, OverRho };     // kappa(rho) = kappa | kappa/rho
enum class ViscosityForm { Constant, ShallowWater };  // mu(rho) = mu | mu*rho

/// Pressure law together with the two potentials derived from it:
///   Pi(s) = s (int_1^s P(z)/z^2 dz - P(1))   (energy potential, Pi'(1) = 0)
///   F'(s) = P'(s)/s                          (log-pressure potential of the
///                                             q = ln rho formulation)
struct PressureLaw {
  std::function<double(double)> P;
  std::function<double(double)> dP;
  std::function<double(double)> Pi;
  std::function<double(double)> F;

  static PressureLaw zero();                     // pressureless runs
  static PressureLaw linear(double K);           // P = K rho
  static PressureLaw gamma_law(double a, double g);  // P = a rho^gamma
  /// Potentials by adaptive-free composite Simpson quadrature of the
  /// defining integrals; used as the cross-check route for the closed forms.
  static PressureLaw from_p(std::function<double(double)> P,
                            std::function<double(double)> dP);
};

struct PressureEval {
  double P = 0.0;
  double Pi = 0.0;
  double F = 0.0;
};
PressureEval pressure_eval(const PressureLaw& law, double s);

struct Params {
  double mu = 1.0;
  double lambda = 0.0;
  double kappa = 1.0;
  CapillarityForm capillarity = CapillarityForm::Constant;
  ViscosityForm viscosity = ViscosityForm::ShallowWater;
  PressureLaw pressure = PressureLaw::linear(1.0);
  double dP1 = 1.0;  // P'(1), the linear pressure stiffness

  void validate(int dim) const;
  /// kappa = mu^2, lambda = 0, shallow-water viscosity, kappa/rho capillarity.
  bool quasi_regime() const;
  /// Coefficients of the linearization at rho = 1.
  LinearCoeffs linearization() const;
};

// --- Korteweg tensor -------------------------------------------------------

/// div K = grad(rho kappa(rho) lap rho + 1/2 (kappa + rho kappa') |grad rho|^2)
///         - div(kappa(rho) grad rho x grad rho), all derivatives spectral.
SpectralField div_korteweg_general(const SpectralField& rho,
                                   const Params& params);
/// kappa/rho regime identity: div K = kappa rho (grad lap ln rho
///                                    + 1/2 grad |grad ln rho|^2).
SpectralField div_korteweg_log(const SpectralField& rho, double kappa);
/// Same tensor written as a viscous form: div K = kappa div(rho grad grad ln rho).
SpectralField div_korteweg_viscous(const SpectralField& rho, double kappa);

// --- Right-hand sides ------------------------------------------------------

struct Rhs {
  SpectralField dq;  // or dh2 for the perturbation system
  SpectralField du;
};

/// Log-density shallow-water form: viscosity mu rho / lambda rho, capillarity
/// kappa/rho.  dq/dt = -u.grad q - div u and the momentum right-hand side of
/// the q-linear system.
Rhs rhs_nhv1(const SpectralField& q, const SpectralField& u,
             const Params& params);

/// Same dynamics assembled through the density form: momentum equation of the
/// conservative system divided by rho, transported to (q, u).  Serves as the
/// independent route for cross-checks and as the general-coefficient system.
Rhs rhs_rho_form(const SpectralField& q, const SpectralField& u,
                 const Params& params);

/// v = u + mu grad q.
SpectralField effective_velocity(const SpectralField& q, const SpectralField& u,
                                 double mu);
/// Effective-velocity system (kappa = mu^2, lambda = 0):
///   dq/dt = mu lap q - v.grad q - div v + mu |grad q|^2
///   dv/dt = -u.grad v + mu lap v + mu grad q . grad v - grad F(rho)
Rhs rhs_effective(const SpectralField& q, const SpectralField& v,
                  const Params& params);

/// Residual of the pressureless system at the quasi-solution
/// (rho1, -mu grad ln rho1) with drho1/dt supplied as mu lap rho1.
/// With `restore_pressure`, the momentum residual picks up exactly grad P(rho1).
struct QuasiResidual {
  double mass_rel = 0.0;      // L2, relative to ||mu lap rho1||
  double momentum_rel = 0.0;  // L2, relative to the largest momentum term
  double mass_linf = 0.0;
  double momentum_linf = 0.0;
  SpectralField momentum_residual;  // for term-level checks
};
QuasiResidual quasi_solution_residual(const SpectralField& rho1, double mu,
                                      const PressureLaw* restore_pressure);

/// Perturbation system around the quasi-solution (h2, u2 unknowns; rho1 the
/// heat background, u1 = -mu grad ln rho1), kappa = mu^2, lambda = 0.
Rhs rhs_perturbation(const SpectralField& h2, const SpectralField& u2,
                     const SpectralField& rho1, const Params& params);

}  // namespace nsk
