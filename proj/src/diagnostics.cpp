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

#include "nsk/diagnostics.hpp"

#include <cmath>

#include "nsk/operators.hpp"

namespace nsk {

EnergyRecord energy(const FluidState& s, const Params& params) {
  s.require_no_vacuum();
  const Grid& g = s.grid();
  const std::size_t npts = g.size();
  SpectralField rho = s.rho();
  const auto& sr = rho.samples();
  const auto& su = s.u.samples();

  EnergyRecord er;
  for (std::size_t j = 0; j < npts; ++j) {
    double uu = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      double v = su[d * npts + j];
      uu += v * v;
    }
    er.kinetic += 0.5 * sr[j] * uu;
    er.potential += params.pressure.Pi(sr[j]) - params.pressure.Pi(1.0);
  }
  SpectralField grho = grad(rho);
  const auto& sg = grho.samples();
  for (std::size_t j = 0; j < npts; ++j) {
    double gg = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      double v = sg[d * npts + j];
      gg += v * v;
    }
    double kap = params.capillarity == CapillarityForm::OverRho
                     ? params.kappa / sr[j]
                     : params.kappa;
    er.capillary += 0.5 * kap * gg;
  }
  double dv = g.cell_volume();
  er.kinetic *= dv;
  er.potential *= dv;
  er.capillary *= dv;
  er.total = er.kinetic + er.potential + er.capillary;
  if (!std::isfinite(er.total)) fail_numeric("energy is not finite");
  return er;
}

double dissipation_rate(const FluidState& s, const Params& params) {
  const Grid& g = s.grid();
  const std::size_t npts = g.size();
  SpectralField rho = s.rho();
  const auto& sr = rho.samples();
  SpectralField D = sym_grad(s.u);
  const auto& sd = D.samples();
  SpectralField divu = divergence(s.u);
  const auto& sv = divu.samples();
  const bool shallow = params.viscosity == ViscosityForm::ShallowWater;

  double acc = 0.0;
  for (std::size_t j = 0; j < npts; ++j) {
    double dd = 0.0;
    for (int c = 0; c < g.dim * g.dim; ++c) {
      double v = sd[c * npts + j];
      dd += v * v;
    }
    double mu_r = shallow ? params.mu * sr[j] : params.mu;
    double lam_r = shallow ? params.lambda * sr[j] : params.lambda;
    acc += 2.0 * mu_r * dd + lam_r * sv[j] * sv[j];
  }
  return acc * g.cell_volume();
}

DissipationVerdict dissipation_check(const Trajectory& traj,
                                     const Params& params, double tol) {
  (void)params;
  if (traj.snapshots.size() < 3)
    fail_validation("dissipation check needs >= 3 snapshots");
  const auto& times = traj.diagnostics.times;
  const auto& total = traj.diagnostics.values.at("energy.total");
  const auto& rate = traj.diagnostics.values.at("energy.dissipation_rate");

  DissipationVerdict v;
  double e0 = total.front();
  double scale = std::max(std::abs(e0), 1e-300);
  double dissipated = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    dissipated +=
        0.5 * (times[i] - times[i - 1]) * (rate[i] + rate[i - 1]);
    double excess = (total[i] + dissipated - e0) / scale;
    v.max_violation = std::max(v.max_violation, excess);
  }
  v.pass = v.max_violation <= tol;
  return v;
}

ScalingVerdict scaling_invariance_check(const SimulationSetup& base,
                                        int lambda_scale, double tol) {
  if (lambda_scale < 1 || (lambda_scale & (lambda_scale - 1)) != 0)
    fail_validation("scaling check needs lambda a power of two");
  Trajectory tb = simulate(base);
  if (tb.aborted) fail_numeric("scaling check: base run aborted");
  if (lambda_scale == 1) return {true, 0.0, tol};

  const double l2 = static_cast<double>(lambda_scale) * lambda_scale;
  SimulationSetup resc = base;
  resc.grid = Grid(base.grid.dim, base.grid.n, base.grid.length / lambda_scale);
  // pressure scaled by lambda^2
  PressureLaw scaled;
  const PressureLaw src = base.params.pressure;
  scaled.P = [src, l2](double s) { return l2 * src.P(s); };
  scaled.dP = [src, l2](double s) { return l2 * src.dP(s); };
  scaled.Pi = [src, l2](double s) { return l2 * src.Pi(s); };
  scaled.F = [src, l2](double s) { return l2 * src.F(s); };
  resc.params.pressure = scaled;
  resc.params.dP1 = l2 * base.params.dP1;
  resc.stepper.dt = base.stepper.dt / l2;
  resc.stepper.T = base.stepper.T / l2;
  // initial data pullback: q_l(x) = q(lambda x), u_l(x) = lambda u(lambda x);
  // with length L/lambda and unchanged n the sample arrays coincide.
  resc.initial.q =
      SpectralField::from_samples(resc.grid, 1, base.initial.q.samples());
  std::vector<double> su(base.initial.u.samples());
  for (double& v : su) v *= lambda_scale;
  resc.initial.u =
      SpectralField::from_samples(resc.grid, resc.grid.dim, std::move(su));
  if (!base.rho1_0.empty())
    resc.rho1_0 =
        SpectralField::from_samples(resc.grid, 1, base.rho1_0.samples());

  Trajectory tr = simulate(resc);
  if (tr.aborted) fail_numeric("scaling check: rescaled run aborted");
  if (tr.snapshots.size() != tb.snapshots.size())
    fail_numeric("scaling check: snapshot counts differ");

  ScalingVerdict v;
  v.tol = tol;
  for (std::size_t i = 0; i < tb.snapshots.size(); ++i) {
    const auto& qb = tb.snapshots[i].q.samples();
    const auto& qr = tr.snapshots[i].q.samples();
    double m = 0.0;
    for (std::size_t j = 0; j < qb.size(); ++j)
      m = std::max(m, std::abs(qr[j] - qb[j]));
    const auto& ub = tb.snapshots[i].u.samples();
    const auto& ur = tr.snapshots[i].u.samples();
    for (std::size_t j = 0; j < ub.size(); ++j)
      m = std::max(m, std::abs(ur[j] / lambda_scale - ub[j]));
    v.sup_mismatch = std::max(v.sup_mismatch, m);
  }
  v.pass = v.sup_mismatch <= tol;
  return v;
}

LinfSeries linf_monitor(const Trajectory& traj) {
  LinfSeries out;
  for (const auto& s : traj.snapshots) {
    out.times.push_back(s.time);
    SpectralField rho = s.rho();
    out.rho_sup.push_back(rho.max_value());
    out.inv_rho_sup.push_back(1.0 / rho.min_value());
    out.q_sup.push_back(s.q.linf());
  }
  return out;
}

}  // namespace nsk
