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

#include "nsk/stepper.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "nsk/diagnostics.hpp"
#include "nsk/operators.hpp"

namespace nsk {

void StepperConfig::validate() const {
  if (!(dt > 0.0)) fail_validation("stepper dt must be positive");
  if (!(T >= dt)) fail_validation("stepper horizon T must be >= dt");
  if (picard_iters < 1) fail_validation("picard_iters must be >= 1");
  if (snapshot_stride < 1) fail_validation("snapshot_stride must be >= 1");
}

void SimulationSetup::validate() const {
  params.validate(grid.dim);
  stepper.validate();
  if (!(initial.grid() == grid))
    fail_validation("initial data grid does not match the run grid");
  switch (variant) {
    case SystemVariant::Nhv1:
      if (params.viscosity != ViscosityForm::ShallowWater ||
          params.capillarity != CapillarityForm::OverRho)
        fail_validation("nhv1 variant needs shallow-water viscosity and "
                        "kappa/rho capillarity");
      break;
    case SystemVariant::Effective:
    case SystemVariant::Perturbation:
      if (!params.quasi_regime())
        fail_validation("variant needs the quasi-solution regime "
                        "(kappa=mu^2, lambda=0)");
      if (variant == SystemVariant::Perturbation && rho1_0.empty())
        fail_validation("perturbation variant needs the rho1 background");
      break;
    default:
      break;
  }
}

SpectralField solve_heat(const SpectralField& rho0, double mu, double t) {
  if (rho0.min_value() <= vacuum_floor())
    fail_validation("solve_heat: vacuum in the initial data");
  if (t < 0.0) fail_validation("solve_heat needs t >= 0");
  return heat_flow(rho0, mu, t);
}

FluidState to_physical(const SimulationSetup& setup, const FluidState& s) {
  switch (setup.variant) {
    case SystemVariant::Effective: {
      FluidState out = s;
      out.u = axpy(-setup.params.mu, grad(s.q), s.u);  // u = v - mu grad q
      return out;
    }
    case SystemVariant::Perturbation: {
      SpectralField rho1 = solve_heat(setup.rho1_0, setup.params.mu, s.time);
      SpectralField q1 = pointwise(rho1, [](double v) { return std::log(v); });
      FluidState out;
      out.q = q1 + s.q;
      out.u = axpy(-setup.params.mu, grad(q1), s.u);
      out.time = s.time;
      return out;
    }
    default:
      return s;
  }
}

// ---------------------------------------------------------------------------

namespace {

// Linear symbol of the potential pair (q^, v^) (v = div u resp. div v):
// d/dt (q, v) = Z(xi) (q, v); rotational components relax at `rot_rate`.
struct SymbolSpec {
  LinearCoeffs lc;      // used by Nhv1 / RhoForm / Perturbation
  bool effective = false;
  double mu = 0.0;      // Effective variant coefficients
  double K = 0.0;

  Eigen::Matrix2d z(double xi2) const {
    Eigen::Matrix2d Z;
    if (effective) {
      Z << -mu * xi2, -1.0, K * xi2, -mu * xi2;
    } else {
      Z << 0.0, -1.0, lc.c * xi2 * xi2 + lc.d * xi2, -lc.nu() * xi2;
    }
    return Z;
  }
  double rot_rate(double xi2) const {
    return effective ? mu * xi2 : lc.a * xi2;
  }
};

// phi1, phi2 for the scalar rotational sector; series fallback near 0.
void scalar_phis(double z, double* e, double* p1, double* p2) {
  *e = std::exp(z);
  if (std::abs(z) < 1e-4) {
    *p1 = 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
    *p2 = 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
  } else {
    *p1 = (*e - 1.0) / z;
    *p2 = (*e - 1.0 - z) / (z * z);
  }
}

struct ModeOps {
  // potential sector
  std::vector<double> E, P1, P2;          // npts x 4, row-major 2x2
  // rotational sector
  std::vector<double> rE, rP1, rP2;       // npts
};

void build_mode_ops(const Grid& g, const SymbolSpec& sym, double dt,
                    ModeOps& ops) {
  const std::size_t npts = g.size();
  ops.E.resize(4 * npts);
  ops.P1.resize(4 * npts);
  ops.P2.resize(4 * npts);
  ops.rE.resize(npts);
  ops.rP1.resize(npts);
  ops.rP2.resize(npts);
  Eigen::Matrix<double, 6, 6> B;
  for (std::size_t j = 0; j < npts; ++j) {
    double xi2 = g.xi_squared(j);
    Eigen::Matrix2d Z = dt * sym.z(xi2);
    // exp of the augmented matrix yields (e^Z, phi1(Z), phi2(Z)) in one go
    B.setZero();
    B.block<2, 2>(0, 0) = Z;
    B.block<2, 2>(0, 2).setIdentity();
    B.block<2, 2>(2, 4).setIdentity();
    Eigen::Matrix<double, 6, 6> EB = B.exp();
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        ops.E[4 * j + 2 * r + c] = EB(r, c);
        ops.P1[4 * j + 2 * r + c] = dt * EB(r, 2 + c);
        ops.P2[4 * j + 2 * r + c] = dt * EB(r, 4 + c);
      }
    double e, p1, p2;
    scalar_phis(-dt * sym.rot_rate(xi2), &e, &p1, &p2);
    ops.rE[j] = e;
    ops.rP1[j] = dt * p1;
    ops.rP2[j] = dt * p2;
  }
}

// Mode-space view of a state: q^, v^ = (div u)^, and the rotational residue.
struct ModeState {
  std::vector<cplx> q, v, urot;  // urot: dim x npts
};

ModeState to_modes(const Grid& g, const FluidState& s) {
  const std::size_t npts = g.size();
  ModeState m;
  m.q = s.q.coeffs();
  m.v.assign(npts, cplx(0.0));
  m.urot.assign(static_cast<std::size_t>(g.dim) * npts, cplx(0.0));
  const auto& cu = s.u.coeffs();
  const double f = g.fundamental();
  for (std::size_t j = 0; j < npts; ++j) {
    auto k = g.k_vector(j);
    double xi2 = g.xi_squared(j);
    cplx div(0.0);
    for (int d = 0; d < g.dim; ++d)
      div += cplx(0.0, f * k[d]) * cu[d * npts + j];
    m.v[j] = div;
    for (int d = 0; d < g.dim; ++d) {
      cplx pot = xi2 > 0.0 ? cplx(0.0, -f * k[d] / xi2) * div : cplx(0.0);
      m.urot[d * npts + j] = cu[d * npts + j] - pot;
    }
  }
  return m;
}

FluidState from_modes(const Grid& g, const ModeState& m, double time) {
  const std::size_t npts = g.size();
  std::vector<cplx> cu(static_cast<std::size_t>(g.dim) * npts);
  const double f = g.fundamental();
  for (std::size_t j = 0; j < npts; ++j) {
    auto k = g.k_vector(j);
    double xi2 = g.xi_squared(j);
    for (int d = 0; d < g.dim; ++d) {
      cplx pot = xi2 > 0.0 ? cplx(0.0, -f * k[d] / xi2) * m.v[j] : cplx(0.0);
      cu[d * npts + j] = pot + m.urot[d * npts + j];
    }
  }
  FluidState out;
  out.q = SpectralField::from_coeffs(g, 1, m.q);
  out.u = SpectralField::from_coeffs(g, g.dim, std::move(cu));
  out.time = time;
  return out;
}

// y += Op * x for the potential pair and the rotational residue.
void apply_ops(const Grid& g, const std::vector<double>& M2,
               const std::vector<double>& Mrot, const ModeState& x,
               ModeState& y) {
  const std::size_t npts = g.size();
  for (std::size_t j = 0; j < npts; ++j) {
    const double* m = &M2[4 * j];
    y.q[j] += m[0] * x.q[j] + m[1] * x.v[j];
    y.v[j] += m[2] * x.q[j] + m[3] * x.v[j];
    for (int d = 0; d < g.dim; ++d)
      y.urot[d * npts + j] += Mrot[j] * x.urot[d * npts + j];
  }
}

ModeState zero_modes(const Grid& g) {
  ModeState m;
  m.q.assign(g.size(), cplx(0.0));
  m.v.assign(g.size(), cplx(0.0));
  m.urot.assign(static_cast<std::size_t>(g.dim) * g.size(), cplx(0.0));
  return m;
}

}  // namespace

struct ExponentialStepper::Impl {
  SimulationSetup setup;
  SymbolSpec sym;
  ModeOps ops;

  Rhs linear_part(const FluidState& s) const {
    Rhs lin;
    if (sym.effective) {
      lin.dq = axpy(sym.mu, laplacian(s.q), (-1.0) * divergence(s.u));
      lin.du = axpy(sym.mu, laplacian(s.u), (-sym.K) * grad(s.q));
    } else {
      const LinearCoeffs& lc = sym.lc;
      lin.dq = (-1.0) * divergence(s.u);
      lin.du = axpy(lc.a, laplacian(s.u),
                    axpy(lc.b, grad(divergence(s.u)),
                         axpy(lc.c, grad_laplacian(s.q),
                              (-lc.d) * grad(s.q))));
    }
    return lin;
  }

  Rhs full_rhs(const FluidState& s, double time) const {
    switch (setup.variant) {
      case SystemVariant::Nhv1:
        return rhs_nhv1(s.q, s.u, setup.params);
      case SystemVariant::RhoForm:
        return rhs_rho_form(s.q, s.u, setup.params);
      case SystemVariant::Effective:
        return rhs_effective(s.q, s.u, setup.params);
      case SystemVariant::Perturbation: {
        SpectralField rho1 = solve_heat(setup.rho1_0, setup.params.mu, time);
        return rhs_perturbation(s.q, s.u, rho1, setup.params);
      }
      default:
        fail_validation("heat variant has no nonlinear stepper");
    }
  }
};

ExponentialStepper::ExponentialStepper(const SimulationSetup& setup)
    : impl_(std::make_unique<Impl>()) {
  setup.validate();
  impl_->setup = setup;
  if (setup.variant == SystemVariant::Effective) {
    impl_->sym.effective = true;
    impl_->sym.mu = setup.params.mu;
    impl_->sym.K = setup.params.dP1;
  } else {
    impl_->sym.lc = setup.params.linearization();
  }
  build_mode_ops(setup.grid, impl_->sym, setup.stepper.dt, impl_->ops);
}

ExponentialStepper::~ExponentialStepper() = default;

Rhs ExponentialStepper::nonlinearity(const FluidState& s, double time) const {
  if (impl_->setup.mute_nonlinearity) {
    Rhs zero;
    zero.dq = SpectralField(s.grid(), 1);
    zero.du = SpectralField(s.grid(), s.grid().dim);
    return zero;
  }
  Rhs full = impl_->full_rhs(s, time);
  Rhs lin = impl_->linear_part(s);
  Rhs out;
  out.dq = full.dq - lin.dq;
  out.du = full.du - lin.du;
  return out;
}

FluidState ExponentialStepper::step(const FluidState& s) const {
  const Grid& g = impl_->setup.grid;
  const double dt = impl_->setup.stepper.dt;
  ModeState x = to_modes(g, s);

  Rhs n0 = nonlinearity(s, s.time);
  FluidState n0s{n0.dq, n0.du, s.time};
  ModeState nm = to_modes(g, n0s);

  ModeState stage = zero_modes(g);
  apply_ops(g, impl_->ops.E, impl_->ops.rE, x, stage);
  apply_ops(g, impl_->ops.P1, impl_->ops.rP1, nm, stage);

  if (impl_->setup.stepper.scheme == Scheme::ExpEuler) {
    return from_modes(g, stage, s.time + dt);
  }

  // ETD2RK correction: + dt phi2 (N(stage, t+dt) - N(s, t))
  FluidState a = from_modes(g, stage, s.time + dt);
  Rhs na = nonlinearity(a, a.time);
  FluidState dn{na.dq - n0.dq, na.du - n0.du, a.time};
  ModeState dnm = to_modes(g, dn);
  apply_ops(g, impl_->ops.P2, impl_->ops.rP2, dnm, stage);
  return from_modes(g, stage, s.time + dt);
}

FluidState ExponentialStepper::linear_flow(const FluidState& s,
                                           double t) const {
  const Grid& g = impl_->setup.grid;
  if (!impl_->sym.effective)
    return apply_semigroup(s, t, impl_->sym.lc);
  // effective variant: dense per-mode exponential of its own symbol
  ModeState x = to_modes(g, s);
  const std::size_t npts = g.size();
  for (std::size_t j = 0; j < npts; ++j) {
    double xi2 = g.xi_squared(j);
    Eigen::Matrix2d E = (t * impl_->sym.z(xi2)).exp();
    cplx q = x.q[j], v = x.v[j];
    x.q[j] = E(0, 0) * q + E(0, 1) * v;
    x.v[j] = E(1, 0) * q + E(1, 1) * v;
    double rot = std::exp(-t * impl_->sym.rot_rate(xi2));
    for (int d = 0; d < g.dim; ++d) x.urot[d * npts + j] *= rot;
  }
  return from_modes(g, x, s.time + t);
}

// ---------------------------------------------------------------------------

Trajectory simulate(const SimulationSetup& setup) {
  setup.validate();
  Trajectory traj;
  const StepperConfig& sc = setup.stepper;
  const int nsteps = static_cast<int>(std::llround(sc.T / sc.dt));

  auto attach = [&](const FluidState& internal) {
    FluidState phys = to_physical(setup, internal);
    traj.snapshots.push_back(phys);
    traj.diagnostics.append(phys.time);
    EnergyRecord er = energy(phys, setup.params);
    traj.diagnostics.record("energy.kinetic", er.kinetic);
    traj.diagnostics.record("energy.potential", er.potential);
    traj.diagnostics.record("energy.capillary", er.capillary);
    traj.diagnostics.record("energy.total", er.total);
    traj.diagnostics.record("energy.dissipation_rate",
                            dissipation_rate(phys, setup.params));
    traj.diagnostics.record("linf.rho", phys.rho().max_value());
    traj.diagnostics.record("linf.inv_rho", 1.0 / phys.min_rho());
    traj.diagnostics.record("linf.q", phys.q.linf());
    for (const auto& spec : setup.besov_diagnostics) {
      traj.diagnostics.record("besov.q." + spec.id(),
                              besov_norm(phys.q, spec));
      traj.diagnostics.record("besov.u." + spec.id(),
                              besov_norm(phys.u, spec));
    }
  };

  if (setup.variant == SystemVariant::Heat) {
    SpectralField rho0 = setup.initial.rho();
    for (int k = 0; k <= nsteps; k += sc.snapshot_stride) {
      double t = k * sc.dt;
      SpectralField rho_t = solve_heat(rho0, setup.params.mu, t);
      FluidState s;
      s.q = pointwise(rho_t, [](double v) { return std::log(v); });
      s.u = SpectralField(setup.grid, setup.grid.dim);
      s.time = t;
      attach(s);
    }
    return traj;
  }

  if (sc.scheme == Scheme::Picard) {
    if (setup.variant != SystemVariant::Nhv1)
      fail_validation("the picard scheme covers the nhv1 variant");
    PicardResult pr = picard_solve(setup.initial, sc.T, sc.picard_iters,
                                   setup.params, nsteps);
    for (int k = 0; k <= nsteps; ++k)
      if (k % sc.snapshot_stride == 0 || k == nsteps)
        attach(pr.final_iterate[k]);
    if (pr.diverged) {
      traj.aborted = true;
      traj.abort_reason = "picard iteration diverged (ratio > 2)";
    }
    return traj;
  }

  ExponentialStepper stepper(setup);
  FluidState s = setup.initial;
  s.time = 0.0;
  attach(s);
  for (int k = 1; k <= nsteps; ++k) {
    // advection CFL guard: dt <= 0.25 h / max|u|
    double umax = to_physical(setup, s).u.linf();
    if (umax > 0.0 && sc.dt > 0.25 * setup.grid.spacing() / umax) {
      traj.aborted = true;
      traj.abort_reason = "CFL violation: dt exceeds 0.25 h / max|u|";
      break;
    }
    FluidState next = stepper.step(s);
    if (!next.q.all_finite() || !next.u.all_finite()) {
      traj.aborted = true;
      traj.abort_reason = "NaN detected; partial trajectory kept";
      break;
    }
    FluidState phys = to_physical(setup, next);
    if (phys.min_rho() < vacuum_floor()) {
      traj.aborted = true;
      traj.abort_reason = "vacuum: density fell below the hard floor";
      break;
    }
    s = next;
    if (k % sc.snapshot_stride == 0 || k == nsteps) attach(s);
  }
  return traj;
}

// ---------------------------------------------------------------------------

PicardResult picard_solve(const FluidState& s0, double T, int n_iter,
                          const Params& params, int nsteps) {
  params.validate(s0.grid().dim);
  if (n_iter < 1 || nsteps < 2) fail_validation("picard needs iters>=1, nsteps>=2");
  const Grid& g = s0.grid();
  const double dt = T / nsteps;
  const LinearCoeffs lc = params.linearization();

  // W(m dt) per-mode propagators, m = 0..nsteps
  const std::size_t npts = g.size();
  std::vector<std::vector<double>> W2(nsteps + 1), Wrot(nsteps + 1);
  for (int m = 0; m <= nsteps; ++m) {
    W2[m].resize(4 * npts);
    Wrot[m].resize(npts);
    for (std::size_t j = 0; j < npts; ++j) {
      double xi2 = g.xi_squared(j);
      Mat2 P = mode_propagator(xi2, m * dt, lc);
      W2[m][4 * j + 0] = P.m[0][0];
      W2[m][4 * j + 1] = P.m[0][1];
      W2[m][4 * j + 2] = P.m[1][0];
      W2[m][4 * j + 3] = P.m[1][1];
      Wrot[m][j] = std::exp(-lc.a * xi2 * m * dt);
    }
  }

  ModeState x0 = to_modes(g, s0);
  // linear flow of the data on the whole grid (iterate 0)
  std::vector<ModeState> lin(nsteps + 1);
  for (int k = 0; k <= nsteps; ++k) {
    lin[k] = zero_modes(g);
    apply_ops(g, W2[k], Wrot[k], x0, lin[k]);
  }

  auto rebuild = [&](const std::vector<ModeState>& m,
                     std::vector<FluidState>& out) {
    out.clear();
    out.reserve(nsteps + 1);
    for (int k = 0; k <= nsteps; ++k)
      out.push_back(from_modes(g, m[k], k * dt));
  };

  auto ft_norm = [&](const std::vector<FluidState>& a,
                     const std::vector<FluidState>& b) {
    // discrete F_T: max_t [B^{N/2}(q) + B^{N/2-1}(u)]
    //               + int_0^T [B^{N/2+2}(q) + B^{N/2+1}(u)] dt
    double shigh = 0.5 * g.dim;
    double sup = 0.0, integral = 0.0, prev = 0.0;
    for (int k = 0; k <= nsteps; ++k) {
      SpectralField dq = a[k].q - b[k].q;
      SpectralField du = a[k].u - b[k].u;
      sup = std::max(sup, besov_norm(dq, shigh, 2.0, INFINITY) +
                              besov_norm(du, shigh - 1.0, 2.0, INFINITY));
      double smooth = besov_norm(dq, shigh + 2.0, 2.0, INFINITY) +
                      besov_norm(du, shigh + 1.0, 2.0, INFINITY);
      if (k > 0) integral += 0.5 * dt * (prev + smooth);
      prev = smooth;
    }
    return sup + integral;
  };

  std::vector<FluidState> zero_traj(nsteps + 1);
  for (int k = 0; k <= nsteps; ++k) {
    zero_traj[k].q = SpectralField(g, 1);
    zero_traj[k].u = SpectralField(g, g.dim);
    zero_traj[k].time = k * dt;
  }

  std::vector<FluidState> prev_states;
  rebuild(lin, prev_states);

  PicardResult res;
  res.iterate_norms.push_back(ft_norm(prev_states, zero_traj));
  std::vector<FluidState> prev_prev;
  std::vector<double> delta_norms;

  Params plain = params;  // nonlinearity of the fixed-point map: full - linear
  for (int n = 1; n <= n_iter; ++n) {
    // nonlinearity of the previous iterate on the grid
    std::vector<ModeState> nmodes(nsteps + 1);
    for (int k = 0; k <= nsteps; ++k) {
      Rhs full = rhs_nhv1(prev_states[k].q, prev_states[k].u, plain);
      Rhs linpart;
      linpart.dq = (-1.0) * divergence(prev_states[k].u);
      linpart.du = axpy(lc.a, laplacian(prev_states[k].u),
                        axpy(lc.b, grad(divergence(prev_states[k].u)),
                             axpy(lc.c, grad_laplacian(prev_states[k].q),
                                  (-lc.d) * grad(prev_states[k].q))));
      FluidState nstate{full.dq - linpart.dq, full.du - linpart.du, k * dt};
      nmodes[k] = to_modes(g, nstate);
    }
    // Duhamel trapezoid: s_n(t_k) = lin_k + sum_j w_j W((k-j) dt) N_j
    std::vector<ModeState> cur(nsteps + 1);
    for (int k = 0; k <= nsteps; ++k) {
      cur[k] = lin[k];
      for (int j = 0; j <= k; ++j) {
        double w = (j == 0 || j == k) ? 0.5 * dt : dt;
        if (k == 0) break;
        ModeState tmp = zero_modes(g);
        apply_ops(g, W2[k - j], Wrot[k - j], nmodes[j], tmp);
        for (std::size_t p = 0; p < npts; ++p) {
          cur[k].q[p] += w * tmp.q[p];
          cur[k].v[p] += w * tmp.v[p];
        }
        for (std::size_t p = 0; p < tmp.urot.size(); ++p)
          cur[k].urot[p] += w * tmp.urot[p];
      }
    }
    std::vector<FluidState> cur_states;
    rebuild(cur, cur_states);
    res.iterate_norms.push_back(ft_norm(cur_states, zero_traj));
    double dn = ft_norm(cur_states, prev_states);
    delta_norms.push_back(dn);
    if (delta_norms.size() >= 2) {
      double r = delta_norms[delta_norms.size() - 2] > 0.0
                     ? dn / delta_norms[delta_norms.size() - 2]
                     : 0.0;
      res.ratios.push_back(r);
      if (r > 2.0) res.diverged = true;
    }
    prev_prev = std::move(prev_states);
    prev_states = std::move(cur_states);
  }
  res.final_iterate = prev_states;
  res.limit_at_T = prev_states.back();
  res.contracting = !res.ratios.empty() && !res.diverged;
  for (double r : res.ratios)
    if (!(r < 1.0)) res.contracting = false;
  return res;
}

}  // namespace nsk
