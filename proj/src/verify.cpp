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

#include "nsk/verify.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "nsk/diagnostics.hpp"
#include "nsk/initial_data.hpp"
#include "nsk/linear.hpp"
#include "nsk/model.hpp"
#include "nsk/operators.hpp"
#include "nsk/paley.hpp"
#include "nsk/stepper.hpp"

namespace nsk {

using nlohmann::json;

namespace {

double rel_err(const SpectralField& a, const SpectralField& b) {
  double scale = std::max({a.l2(), b.l2(), 1e-300});
  return (a - b).l2() / scale;
}

// --- 1. Korteweg tensor triple identity -----------------------------------

SuiteResult suite_tensor_identity() {
  SuiteResult res;
  res.name = "tensor-identity";
  const double kappa = 0.7;
  Params params;
  params.mu = 1.0;
  params.kappa = kappa;
  params.capillarity = CapillarityForm::OverRho;
  double worst = 0.0;
  for (int dim : {1, 2}) {
    Grid g(dim, 64, Grid::two_pi());
    for (int trial = 0; trial < 10; ++trial) {
      SpectralField rho =
          random_positive_density(g, 0.05, 1000 + 17 * dim + trial);
      SpectralField a = div_korteweg_general(rho, params);
      SpectralField b = div_korteweg_log(rho, kappa);
      SpectralField c = div_korteweg_viscous(rho, kappa);
      worst = std::max({worst, rel_err(a, b), rel_err(b, c), rel_err(a, c)});
    }
  }
  res.pass = worst <= 1e-8;
  res.details = json{{"pairwise_rel_max", worst}, {"tol", 1e-8}}.dump();
  return res;
}

// --- 2. Closed-form semigroup vs dense matrix exponential ------------------

SuiteResult suite_semigroup_closed_form() {
  SuiteResult res;
  res.name = "semigroup-closed-form";
  struct Regime {
    const char* name;
    LinearCoeffs lc;
  };
  const Regime regimes[] = {
      {"trigonometric", {0.5, 0.5, 1.0, 0.0}},  // nu^2 = 1 < 4c
      {"resonant", {1.0, 1.0, 1.0, 0.0}},       // nu^2 = 4c
      {"hyperbolic", {1.0, 1.0, 0.25, 0.0}},    // nu^2 = 4 > 1 = 4c
  };
  double worst = 0.0;
  json per;
  for (const auto& r : regimes) {
    double regime_worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      double xi2 = std::pow(10.0, -2.0 + 4.0 * i / 9.0);  // 1e-2 .. 1e2
      for (int j = 0; j < 10; ++j) {
        double t = std::pow(10.0, -3.0 + 3.0 * j / 9.0);  // 1e-3 .. 1
        Mat2 closed = closed_form_exp(xi2, t, r.lc);
        Eigen::Matrix2d A;
        A << 0.0, -xi2, r.lc.c * xi2, r.lc.nu() * xi2;
        Eigen::Matrix2d dense = (-t * A).exp();
        double num = 0.0, den = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            num += std::pow(closed.m[a][b] - dense(a, b), 2);
            den += std::pow(dense(a, b), 2);
          }
        regime_worst =
            std::max(regime_worst, std::sqrt(num / std::max(den, 1e-300)));
      }
    }
    per[r.name] = regime_worst;
    worst = std::max(worst, regime_worst);
  }
  res.pass = worst <= 1e-10;
  res.details = json{{"rel_max", worst}, {"per_regime", per}, {"tol", 1e-10}}
                    .dump();
  return res;
}

// --- 3. Block decay law ----------------------------------------------------

SuiteResult suite_semigroup_decay() {
  SuiteResult res;
  res.name = "semigroup-decay";
  Grid g(1, 256, Grid::two_pi());
  json details;
  bool pass = true;

  // (a) 2^{2l} scaling across blocks at mu=1, lambda=0, kappa=1
  LinearCoeffs lc{1.0, 1.0, 1.0, 0.0};
  std::vector<double> rates, cfits;
  for (int l : {2, 3, 4}) {
    std::vector<double> tg(50);
    double tmax = 3.0 / std::ldexp(1.0, 2 * l);
    for (int i = 0; i < 50; ++i) tg[i] = tmax * (i + 1) / 50.0;
    DecayReport rep = verify_block_decay(g, l, lc, tg, 42 + l);
    rates.push_back(rep.measured_rate);
    cfits.push_back(rep.c_fit);
  }
  for (std::size_t i = 0; i + 1 < rates.size(); ++i) {
    double ratio = rates[i + 1] / rates[i];
    if (!(ratio >= 4.0 * 0.8 && ratio <= 4.0 * 1.2)) pass = false;
    details["rate_ratio"].push_back(ratio);
  }
  double cmean = (cfits[0] + cfits[1] + cfits[2]) / 3.0;
  for (double c : cfits)
    if (std::abs(c / cmean - 1.0) > 0.2) pass = false;
  details["c_fit_blocks"] = cfits;

  // (b) prefactor tracks min(1, 4c/nu^2) nu over a kappa sweep (block 3)
  std::vector<double> sweep_cfits;
  for (double kap : {0.25, 0.04, 0.01}) {
    LinearCoeffs lk{1.0, 1.0, kap, 0.0};
    double scale = std::min(1.0, 4.0 * kap / (lk.nu() * lk.nu())) * lk.nu() *
                   std::ldexp(1.0, 6);
    std::vector<double> tg(50);
    double tmax = 6.0 / scale;
    for (int i = 0; i < 50; ++i) tg[i] = tmax * (i + 1) / 50.0;
    DecayReport rep = verify_block_decay(g, 3, lk, tg, 99);
    sweep_cfits.push_back(rep.c_fit);
  }
  double gm = std::cbrt(sweep_cfits[0] * sweep_cfits[1] * sweep_cfits[2]);
  for (double c : sweep_cfits)
    if (std::abs(c / gm - 1.0) > 0.3) pass = false;
  details["c_fit_sweep"] = sweep_cfits;

  res.pass = pass;
  res.details = details.dump();
  return res;
}

// --- 4. Dyadic Lyapunov monotonicity ---------------------------------------

SuiteResult suite_dyadic_lyapunov() {
  SuiteResult res;
  res.name = "dyadic-lyapunov";
  Grid g(1, 128, Grid::two_pi());
  bool pass = true;
  json details;
  for (double c : {1.0, 0.25}) {
    LinearCoeffs lc{1.0, 1.0, c, 0.0};
    double alpha = dyadic_energy_alpha_max(lc);  // sqrt(c)/2
    FluidState s0;
    s0.q = random_band_limited(g, 1, 1, 40, 0.7, 314);
    s0.u = random_band_limited(g, 1, 1, 40, 0.7, 315);
    paley::BlockRange range = paley::block_range(g);
    double worst_uptick = 0.0;
    for (int l = range.jmin; l <= range.jmax; ++l) {
      double tmax = 4.0 / std::ldexp(1.0, 2 * l);
      double prev = 0.0;
      for (int i = 0; i < 50; ++i) {
        double t = tmax * i / 49.0;
        FluidState st = apply_semigroup(s0, t, lc);
        double kl = dyadic_energy(st, l, alpha, lc);
        if (i > 0) {
          double uptick = kl - prev * (1.0 + 1e-10) - 1e-13;
          worst_uptick = std::max(worst_uptick, uptick);
          if (uptick > 0.0) pass = false;
        }
        prev = kl;
      }
    }
    details["worst_uptick_c=" + std::to_string(c)] = worst_uptick;
  }
  res.pass = pass;
  res.details = details.dump();
  return res;
}

// --- 5. Quasi-solution exactness -------------------------------------------

SuiteResult suite_quasi_solution() {
  SuiteResult res;
  res.name = "quasi-solution";
  Grid g(1, 128, Grid::two_pi());
  const double mu = 0.7;
  SpectralField rho0 = gaussian_bump(g, 0.3, 0.1);
  double worst_mass = 0.0, worst_mom = 0.0;
  for (int i = 0; i < 20; ++i) {
    double t = 0.5 * i / 19.0;
    SpectralField rho1 = solve_heat(rho0, mu, t);
    QuasiResidual qr = quasi_solution_residual(rho1, mu, nullptr);
    worst_mass = std::max(worst_mass, qr.mass_rel);
    worst_mom = std::max(worst_mom, qr.momentum_rel);
  }
  // with the pressure restored the momentum residual is exactly grad P
  PressureLaw law = PressureLaw::linear(0.8);
  SpectralField rho1 = solve_heat(rho0, mu, 0.1);
  QuasiResidual qp = quasi_solution_residual(rho1, mu, &law);
  SpectralField gradP = 0.8 * grad(rho1);
  double pressure_rel = rel_err(qp.momentum_residual, gradP);

  res.pass = worst_mass <= 1e-8 && worst_mom <= 1e-8 && pressure_rel <= 1e-8;
  res.details = json{{"mass_rel_max", worst_mass},
                     {"momentum_rel_max", worst_mom},
                     {"pressure_restored_rel", pressure_rel},
                     {"tol", 1e-8}}
                    .dump();
  return res;
}

// --- 6. Effective-velocity equivalence -------------------------------------

SuiteResult suite_effective_velocity() {
  SuiteResult res;
  res.name = "effective-velocity";
  Grid g(1, 64, Grid::two_pi());
  Params params;
  params.mu = 0.8;
  params.lambda = 0.0;
  params.kappa = 0.64;
  params.capillarity = CapillarityForm::OverRho;
  params.viscosity = ViscosityForm::ShallowWater;
  params.pressure = PressureLaw::linear(1.0);
  params.dP1 = 1.0;

  SpectralField bump = centered_bump(g, 0.005, 0.1);
  FluidState s0;
  s0.q = bump;
  s0.u = random_band_limited(g, 1, 1, 4, 0.005, 2024);

  SimulationSetup a;
  a.variant = SystemVariant::Nhv1;
  a.params = params;
  a.grid = g;
  a.initial = s0;
  a.stepper = {5e-4, 5e-3, Scheme::ExpRk2, 5, 1};

  SimulationSetup b = a;
  b.variant = SystemVariant::Effective;
  b.initial.u = effective_velocity(s0.q, s0.u, params.mu);

  ExponentialStepper stepA(a), stepB(b);
  FluidState sa = a.initial, sb = b.initial;
  double sup = 0.0;
  for (int k = 0; k < 10; ++k) {
    sa = stepA.step(sa);
    sb = stepB.step(sb);
    SpectralField va = effective_velocity(sa.q, sa.u, params.mu);
    sup = std::max(sup, (sa.q - sb.q).linf());
    sup = std::max(sup, (va - sb.u).linf());
  }
  res.pass = sup <= 1e-6;
  res.details = json{{"sup_error", sup}, {"tol", 1e-6}}.dump();
  return res;
}

// --- 7. Energy inequality ---------------------------------------------------

SimulationSetup shipped_energy_run(int which) {
  SimulationSetup setup;
  if (which == 0) {  // nhv1, 1D
    Grid g(1, 128, Grid::two_pi());
    setup.variant = SystemVariant::Nhv1;
    setup.grid = g;
    setup.params.mu = 1.0;
    setup.params.lambda = 0.2;
    setup.params.kappa = 1.0;
    setup.params.capillarity = CapillarityForm::OverRho;
    setup.params.viscosity = ViscosityForm::ShallowWater;
    setup.params.pressure = PressureLaw::linear(1.0);
    setup.params.dP1 = 1.0;
    SpectralField rho0 = gaussian_bump(g, 0.05, 0.08);
    setup.initial.q = pointwise(rho0, [](double v) { return std::log(v); });
    setup.initial.u = random_band_limited(g, 1, 1, 4, 0.05, 7001);
    setup.stepper = {1e-3, 0.4, Scheme::ExpRk2, 5, 10};
  } else if (which == 1) {  // nhv1, 2D
    Grid g(2, 64, Grid::two_pi());
    setup.variant = SystemVariant::Nhv1;
    setup.grid = g;
    setup.params.mu = 1.0;
    setup.params.lambda = 0.0;
    setup.params.kappa = 1.0;
    setup.params.capillarity = CapillarityForm::OverRho;
    setup.params.viscosity = ViscosityForm::ShallowWater;
    setup.params.pressure = PressureLaw::linear(1.0);
    setup.params.dP1 = 1.0;
    SpectralField rho0 = gaussian_bump(g, 0.03, 0.1);
    setup.initial.q = pointwise(rho0, [](double v) { return std::log(v); });
    setup.initial.u = random_band_limited(g, 2, 1, 4, 0.03, 7002);
    setup.stepper = {1e-3, 0.15, Scheme::ExpRk2, 5, 15};
  } else {  // rho_form, constant coefficients, gamma pressure
    Grid g(1, 128, Grid::two_pi());
    setup.variant = SystemVariant::RhoForm;
    setup.grid = g;
    setup.params.mu = 1.0;
    setup.params.lambda = 0.1;
    setup.params.kappa = 0.5;
    setup.params.capillarity = CapillarityForm::Constant;
    setup.params.viscosity = ViscosityForm::Constant;
    setup.params.pressure = PressureLaw::gamma_law(1.0, 1.4);
    setup.params.dP1 = 1.4;
    SpectralField rho0 = gaussian_bump(g, 0.05, 0.09);
    setup.initial.q = pointwise(rho0, [](double v) { return std::log(v); });
    setup.initial.u = random_band_limited(g, 1, 1, 4, 0.05, 7003);
    setup.stepper = {1e-3, 0.4, Scheme::ExpRk2, 5, 10};
  }
  return setup;
}

SuiteResult suite_energy() {
  SuiteResult res;
  res.name = "energy";
  bool pass = true;
  json details;
  for (int which = 0; which < 3; ++which) {
    SimulationSetup setup = shipped_energy_run(which);
    Trajectory traj = simulate(setup);
    if (traj.aborted) {
      pass = false;
      details["run" + std::to_string(which)] = "aborted: " + traj.abort_reason;
      continue;
    }
    DissipationVerdict v = dissipation_check(traj, setup.params, 1e-3);
    pass = pass && v.pass;
    details["run" + std::to_string(which)] = v.max_violation;
  }
  res.pass = pass;
  details["tol"] = 1e-3;
  res.details = details.dump();
  return res;
}

// --- 8. Scaling invariance ---------------------------------------------------

SuiteResult suite_scaling() {
  SuiteResult res;
  res.name = "scaling";
  Grid g(1, 64, Grid::two_pi());
  SimulationSetup base;
  base.variant = SystemVariant::Nhv1;
  base.grid = g;
  base.params.mu = 1.0;
  base.params.lambda = 0.0;
  base.params.kappa = 1.0;
  base.params.capillarity = CapillarityForm::OverRho;
  base.params.viscosity = ViscosityForm::ShallowWater;
  base.params.pressure = PressureLaw::linear(1.0);
  base.params.dP1 = 1.0;
  SpectralField rho0 = gaussian_bump(g, 0.2, 0.1);
  base.initial.q = pointwise(rho0, [](double v) { return std::log(v); });
  base.initial.u = random_band_limited(g, 1, 1, 4, 0.1, 88);
  base.stepper = {1e-3, 0.08, Scheme::ExpRk2, 5, 10};
  base.mute_nonlinearity = true;

  ScalingVerdict lin = scaling_invariance_check(base, 2, 1e-10);

  SimulationSetup nl = base;
  nl.mute_nonlinearity = false;
  SpectralField rho_small = gaussian_bump(g, 0.02, 0.1);
  nl.initial.q = pointwise(rho_small, [](double v) { return std::log(v); });
  nl.initial.u = random_band_limited(g, 1, 1, 4, 0.01, 89);
  ScalingVerdict non = scaling_invariance_check(nl, 2, 1e-4);

  res.pass = lin.pass && non.pass;
  res.details = json{{"linear_sup", lin.sup_mismatch},
                     {"linear_tol", 1e-10},
                     {"nonlinear_sup", non.sup_mismatch},
                     {"nonlinear_tol", 1e-4}}
                    .dump();
  return res;
}

// --- 9. Homogeneous-profile Besov flatness ----------------------------------

SuiteResult suite_besov_profile() {
  SuiteResult res;
  res.name = "besov-profile";
  bool pass = true;
  json details;

  // flatness of 2^{j(N/2-sigma)} ||Delta_j .||_{L2} on the middle band
  struct Case {
    int dim, n;
    double sigma;
  };
  for (const Case& c : {Case{1, 1024, 0.5}, Case{2, 256, 1.0}}) {
    Grid g(c.dim, c.n, Grid::two_pi());
    ScalingReport rep = block_scaling_check(c.sigma, g);
    double mean = 0.0;
    for (double v : rep.values) mean += v;
    mean /= rep.values.size();
    double dev = 0.0;
    for (double v : rep.values) dev = std::max(dev, std::abs(v / mean - 1.0));
    if (dev > 0.10) pass = false;
    details["flatness_dev_N" + std::to_string(c.dim)] = dev;
  }

  // truncated profile: B^{N/2-1}_{2,inf} ~ 2^{-l0 eps}
  Grid g1(1, 4096, Grid::two_pi());
  {
    const double eps = 0.08;
    std::vector<double> l0s, lognorms;
    for (int l0 : {3, 4, 5, 6}) {
      TruncatedProfile tp = truncated_profile(eps, l0, g1, 2.0);
      l0s.push_back(l0);
      lognorms.push_back(std::log2(tp.norm_besov_inf));
    }
    // least-squares slope of log2 norm vs l0
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < l0s.size(); ++i) {
      sx += l0s[i];
      sy += lognorms[i];
      sxx += l0s[i] * l0s[i];
      sxy += l0s[i] * lognorms[i];
    }
    double n = static_cast<double>(l0s.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double rel = std::abs(-slope / eps - 1.0);
    if (rel > 0.25) pass = false;
    details["l0_slope"] = slope;
    details["l0_slope_rel_dev"] = rel;
  }

  // ratio B_{2,r} / B_{2,inf} vs the band-truncated geometric prediction
  {
    const int l0 = 3;
    const double r = 2.0;
    paley::BlockRange range = paley::block_range(g1);
    json ratios;
    for (double eps : {0.04, 0.1}) {
      TruncatedProfile tp = truncated_profile(eps, l0, g1, r);
      double measured = tp.norm_besov_r / tp.norm_besov_inf;
      int nblocks = range.jmax - l0 + 1;
      double q = std::pow(2.0, -r * eps);
      double predicted =
          std::pow((1.0 - std::pow(q, nblocks)) / (1.0 - q), 1.0 / r);
      double rel = std::abs(measured / predicted - 1.0);
      if (rel > 0.25) pass = false;
      ratios.push_back(
          {{"eps", eps}, {"measured", measured}, {"predicted", predicted}});
    }
    details["r_ratio"] = ratios;
  }

  res.pass = pass;
  res.details = details.dump();
  return res;
}

// --- 10. Picard contraction --------------------------------------------------

SuiteResult suite_picard() {
  SuiteResult res;
  res.name = "picard";
  Grid g(1, 64, Grid::two_pi());
  Params params;
  params.mu = 1.0;
  params.lambda = 0.0;
  params.kappa = 1.0;
  params.capillarity = CapillarityForm::OverRho;
  params.viscosity = ViscosityForm::ShallowWater;
  params.pressure = PressureLaw::linear(1.0);
  params.dP1 = 1.0;

  FluidState s0;
  s0.q = random_band_limited(g, 1, 1, 4, 5e-3, 505);
  s0.u = random_band_limited(g, 1, 1, 4, 5e-3, 506);

  const double T = 0.1;
  const int nsteps = 50;
  PicardResult pr = picard_solve(s0, T, 6, params, nsteps);

  bool ratios_ok = pr.ratios.size() >= 4;
  for (std::size_t i = 0; i < 4 && i < pr.ratios.size(); ++i)
    if (!(pr.ratios[i] < 1.0)) ratios_ok = false;

  SimulationSetup setup;
  setup.variant = SystemVariant::Nhv1;
  setup.params = params;
  setup.grid = g;
  setup.initial = s0;
  setup.stepper = {T / nsteps, T, Scheme::ExpRk2, 5, nsteps};
  Trajectory traj = simulate(setup);
  const FluidState& ref = traj.snapshots.back();
  double rel = stack(pr.limit_at_T.q - ref.q, pr.limit_at_T.u - ref.u).l2() /
               std::max(stack(ref.q, ref.u).l2(), 1e-300);

  res.pass = ratios_ok && rel <= 1e-4;
  res.details = json{{"ratios", pr.ratios},
                     {"limit_vs_stepper_rel", rel},
                     {"tol", 1e-4}}
                    .dump();
  return res;
}

// --- 11. L-infinity / Duhamel split -----------------------------------------

SuiteResult suite_duhamel_linf() {
  SuiteResult res;
  res.name = "duhamel-linf";
  LinearCoeffs lc{1.0, 1.0, 1.0, 0.0};
  auto make_state = [&](int n) {
    Grid g(1, n, Grid::two_pi());
    FluidState s0;
    s0.q = centered_bump(g, 0.1, 0.06);
    s0.u = centered_bump(g, 0.3, 0.08);
    return s0;
  };
  DuhamelReport r64 = duhamel_linf_split(make_state(64), lc, 0.4, 6, 200);
  DuhamelReport r128 = duhamel_linf_split(make_state(128), lc, 0.4, 6, 200);

  bool pass = r64.split_vs_direct_rel <= 1e-6 &&
              r128.split_vs_direct_rel <= 1e-6 &&
              r64.heat_sup_ratio <= 1.0 + 1e-10 &&
              r128.heat_sup_ratio <= 1.0 + 1e-10;
  auto stable = [](double a, double b) {
    if (a == 0.0 && b == 0.0) return true;
    return std::abs(a / b - 1.0) <= 0.25;
  };
  pass = pass && stable(r64.c_fit_sqrt_t, r128.c_fit_sqrt_t);
  pass = pass && stable(r64.c_fit_linf, r128.c_fit_linf);

  res.pass = pass;
  res.details = json{{"split_rel_64", r64.split_vs_direct_rel},
                     {"split_rel_128", r128.split_vs_direct_rel},
                     {"heat_sup_64", r64.heat_sup_ratio},
                     {"c_fit_linf", {r64.c_fit_linf, r128.c_fit_linf}},
                     {"c_fit_sqrt_t", {r64.c_fit_sqrt_t, r128.c_fit_sqrt_t}},
                     {"tol_split", 1e-6}}
                    .dump();
  return res;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "tensor-identity",    "semigroup-closed-form",
      "semigroup-decay",    "dyadic-lyapunov",
      "quasi-solution",     "effective-velocity",
      "energy",             "scaling",
      "besov-profile",      "picard",
      "duhamel-linf",
  };
  return names;
}

SuiteResult run_suite(const std::string& name) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult res;
  if (name == "tensor-identity") res = suite_tensor_identity();
  else if (name == "semigroup-closed-form") res = suite_semigroup_closed_form();
  else if (name == "semigroup-decay") res = suite_semigroup_decay();
  else if (name == "dyadic-lyapunov") res = suite_dyadic_lyapunov();
  else if (name == "quasi-solution") res = suite_quasi_solution();
  else if (name == "effective-velocity") res = suite_effective_velocity();
  else if (name == "energy") res = suite_energy();
  else if (name == "scaling") res = suite_scaling();
  else if (name == "besov-profile") res = suite_besov_profile();
  else if (name == "picard") res = suite_picard();
  else if (name == "duhamel-linf") res = suite_duhamel_linf();
  else fail_validation("unknown suite: " + name);
  auto t1 = std::chrono::steady_clock::now();
  res.seconds = std::chrono::duration<double>(t1 - t0).count();
  return res;
}

int run_all_suites(std::ostream& out, std::string* verdict_json) {
  int failures = 0;
  json verdicts = json::array();
  for (const std::string& name : suite_names()) {
    SuiteResult r = run_suite(name);
    if (!r.pass) ++failures;
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  ("
        << r.seconds << " s)  " << r.details << "\n";
    verdicts.push_back(json{{"name", r.name},
                            {"pass", r.pass},
                            {"seconds", r.seconds},
                            {"details", json::parse(r.details)}});
  }
  if (verdict_json) *verdict_json = verdicts.dump(2);
  return failures;
}

}  // namespace nsk
