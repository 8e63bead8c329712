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

#include "nsk/model.hpp"

#include <cmath>

#include "nsk/operators.hpp"

namespace nsk {

namespace {

double simpson(const std::function<double(double)>& f, double lo, double hi,
               int nodes = 512) {
  if (lo == hi) return 0.0;
  double h = (hi - lo) / nodes;
  double acc = f(lo) + f(hi);
  for (int m = 1; m < nodes; ++m) acc += (m % 2 ? 4.0 : 2.0) * f(lo + m * h);
  return acc * h / 3.0;
}

void require_positive(const SpectralField& rho, const char* who) {
  if (rho.min_value() <= vacuum_floor())
    fail_numeric(std::string(who) + ": vacuum (min rho at or below floor)");
}

// (div T)_j = sum_i d_i T_ij for a rank dim*dim tensor stored row-major.
SpectralField div_tensor(const SpectralField& T) {
  const Grid& g = T.grid();
  if (T.rank() != g.dim * g.dim)
    fail_validation("div_tensor expects a dim x dim tensor field");
  const std::size_t npts = g.size();
  std::vector<double> out(static_cast<std::size_t>(g.dim) * npts, 0.0);
  for (int i = 0; i < g.dim; ++i) {
    for (int j = 0; j < g.dim; ++j) {
      SpectralField dT = grad(T.component(i * g.dim + j));
      const auto& s = dT.samples();
      for (std::size_t p = 0; p < npts; ++p)
        out[j * npts + p] += s[i * npts + p];
    }
  }
  return dealias(SpectralField::from_samples(g, g.dim, std::move(out)));
}

// T_ij = w (a_i b_j) for vectors a, b and a scalar weight w.
SpectralField weighted_outer(const SpectralField& w, const SpectralField& a,
                             const SpectralField& b) {
  const Grid& g = a.grid();
  const std::size_t npts = g.size();
  const auto& sw = w.samples();
  const auto& sa = a.samples();
  const auto& sb = b.samples();
  std::vector<double> out(static_cast<std::size_t>(g.dim) * g.dim * npts);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j)
      for (std::size_t p = 0; p < npts; ++p)
        out[(i * g.dim + j) * npts + p] =
            sw[p] * sa[i * npts + p] * sb[j * npts + p];
  return dealias(SpectralField::from_samples(g, g.dim * g.dim, std::move(out)));
}

SpectralField hessian(const SpectralField& scalar) {
  const Grid& g = scalar.grid();
  SpectralField gq = grad(scalar);
  const std::size_t npts = g.size();
  std::vector<double> out(static_cast<std::size_t>(g.dim) * g.dim * npts);
  for (int i = 0; i < g.dim; ++i) {
    SpectralField di = grad(gq.component(i));
    const auto& s = di.samples();
    for (int j = 0; j < g.dim; ++j)
      for (std::size_t p = 0; p < npts; ++p)
        out[(i * g.dim + j) * npts + p] = s[j * npts + p];
  }
  return SpectralField::from_samples(g, g.dim * g.dim, std::move(out));
}

SpectralField log_field(const SpectralField& rho) {
  return pointwise(rho, [](double v) { return std::log(v); });
}

}  // namespace

PressureLaw PressureLaw::zero() {
  PressureLaw law;
  law.P = [](double) { return 0.0; };
  law.dP = [](double) { return 0.0; };
  law.Pi = [](double) { return 0.0; };
  law.F = [](double) { return 0.0; };
  return law;
}

PressureLaw PressureLaw::linear(double K) {
  if (!(K > 0.0)) fail_validation("linear pressure needs K > 0");
  PressureLaw law;
  law.P = [K](double s) { return K * s; };
  law.dP = [K](double) { return K; };
  law.Pi = [K](double s) { return K * (s * std::log(s) - s); };
  law.F = [K](double s) { return K * std::log(s); };
  return law;
}

PressureLaw PressureLaw::gamma_law(double a, double g) {
  if (!(a > 0.0 && g > 1.0)) fail_validation("gamma law needs a > 0, gamma > 1");
  PressureLaw law;
  law.P = [a, g](double s) { return a * std::pow(s, g); };
  law.dP = [a, g](double s) { return a * g * std::pow(s, g - 1.0); };
  law.Pi = [a, g](double s) {
    return a * (std::pow(s, g) - g * s) / (g - 1.0);
  };
  law.F = [a, g](double s) {
    return a * g * (std::pow(s, g - 1.0) - 1.0) / (g - 1.0);
  };
  return law;
}

PressureLaw PressureLaw::from_p(std::function<double(double)> P,
                                std::function<double(double)> dP) {
  PressureLaw law;
  law.P = P;
  law.dP = dP;
  law.Pi = [P](double s) {
    double integral = simpson([&](double z) { return P(z) / (z * z); }, 1.0, s);
    return s * (integral - P(1.0));
  };
  law.F = [dP](double s) {
    return simpson([&](double z) { return dP(z) / z; }, 1.0, s);
  };
  return law;
}

PressureEval pressure_eval(const PressureLaw& law, double s) {
  if (!(s > 0.0)) fail_validation("pressure_eval needs s > 0");
  return {law.P(s), law.Pi(s), law.F(s)};
}

void Params::validate(int dim) const {
  if (!(mu > 0.0)) fail_validation("mu > 0 violated");
  if (!(2.0 * mu + lambda > 0.0)) fail_validation("2mu+lambda>0 violated");
  if (2.0 * mu + dim * lambda < 0.0)
    fail_validation("2mu+N*lambda>=0 violated");
  if (!(kappa > 0.0)) fail_validation("kappa > 0 violated");
  if (dP1 < 0.0) fail_validation("P'(1) >= 0 violated");
}

bool Params::quasi_regime() const {
  double tol = 1e-12 * std::max(1.0, mu * mu);
  return std::abs(kappa - mu * mu) <= tol && lambda == 0.0 &&
         viscosity == ViscosityForm::ShallowWater &&
         capillarity == CapillarityForm::OverRho;
}

LinearCoeffs Params::linearization() const {
  return LinearCoeffs{mu, lambda + mu, kappa, dP1};
}

SpectralField div_korteweg_general(const SpectralField& rho,
                                   const Params& params) {
  require_positive(rho, "div_korteweg_general");
  const bool over_rho = params.capillarity == CapillarityForm::OverRho;
  const double kap = params.kappa;

  SpectralField kap_rho =
      over_rho ? pointwise(rho, [kap](double r) { return kap / r; })
               : pointwise(rho, [kap](double) { return kap; });
  // kappa(rho) + rho kappa'(rho): kap for the constant form, 0 for kap/rho.
  SpectralField kap_eff =
      over_rho ? pointwise(rho, [](double) { return 0.0; })
               : pointwise(rho, [kap](double) { return kap; });

  SpectralField lap_rho = laplacian(rho);
  SpectralField grad_rho = grad(rho);
  SpectralField grho2 = grad_sq(rho);

  // rho kappa(rho) lap rho + 1/2 (kappa + rho kappa') |grad rho|^2
  SpectralField scalar =
      product(product(rho, kap_rho), lap_rho) + 0.5 * product(kap_eff, grho2);
  SpectralField term1 = grad(scalar);
  SpectralField term2 = div_tensor(weighted_outer(kap_rho, grad_rho, grad_rho));
  return term1 - term2;
}

SpectralField div_korteweg_log(const SpectralField& rho, double kappa) {
  require_positive(rho, "div_korteweg_log");
  SpectralField q = log_field(rho);
  SpectralField inner = grad_laplacian(q) + 0.5 * grad(grad_sq(q));
  return kappa * product(rho, inner);
}

SpectralField div_korteweg_viscous(const SpectralField& rho, double kappa) {
  require_positive(rho, "div_korteweg_viscous");
  SpectralField q = log_field(rho);
  SpectralField T = hessian(q);
  const Grid& g = rho.grid();
  const std::size_t npts = g.size();
  const auto& sr = rho.samples();
  const auto& st = T.samples();
  std::vector<double> out(st.size());
  for (int c = 0; c < T.rank(); ++c)
    for (std::size_t p = 0; p < npts; ++p)
      out[c * npts + p] = sr[p] * st[c * npts + p];
  SpectralField rhoT = dealias(
      SpectralField::from_samples(g, g.dim * g.dim, std::move(out)));
  return kappa * div_tensor(rhoT);
}

Rhs rhs_nhv1(const SpectralField& q, const SpectralField& u,
             const Params& params) {
  params.validate(q.grid().dim);
  if (params.viscosity != ViscosityForm::ShallowWater ||
      params.capillarity != CapillarityForm::OverRho)
    fail_validation("rhs_nhv1 needs shallow-water viscosity and kappa/rho");
  const double mu = params.mu, lam = params.lambda, kap = params.kappa;

  SpectralField gq = grad(q);
  SpectralField du_dt = (-1.0) * advect(u, u);
  du_dt = du_dt + mu * laplacian(u);
  du_dt = du_dt + 2.0 * mu * vec_dot_tensor(gq, sym_grad(u));
  SpectralField divu = divergence(u);
  du_dt = du_dt + (lam + mu) * grad(divu);
  du_dt = du_dt + lam * product(divu, gq);
  // grad F(rho) = P'(rho) grad q
  SpectralField dP_rho =
      pointwise(q, [&](double qq) { return params.pressure.dP(std::exp(qq)); });
  du_dt = du_dt - product(dP_rho, gq);
  du_dt = du_dt + kap * grad_laplacian(q);
  du_dt = du_dt + (0.5 * kap) * grad(grad_sq(q));

  Rhs out;
  out.dq = (-1.0) * advect(u, q) - divu;
  out.du = du_dt;
  return out;
}

Rhs rhs_rho_form(const SpectralField& q, const SpectralField& u,
                 const Params& params) {
  params.validate(q.grid().dim);
  SpectralField rho = pointwise(q, [](double v) { return std::exp(v); });
  require_positive(rho, "rhs_rho_form");
  SpectralField inv_rho = pointwise(rho, [](double v) { return 1.0 / v; });

  const bool shallow = params.viscosity == ViscosityForm::ShallowWater;
  SpectralField mu_rho =
      shallow ? params.mu * rho
              : pointwise(rho, [&](double) { return params.mu; });
  SpectralField lam_rho =
      shallow ? params.lambda * rho
              : pointwise(rho, [&](double) { return params.lambda; });

  // div(2 mu(rho) D(u)) with D the symmetric gradient
  SpectralField D = sym_grad(u);
  const Grid& g = q.grid();
  const std::size_t npts = g.size();
  const auto& sm = mu_rho.samples();
  const auto& sd = D.samples();
  std::vector<double> tens(sd.size());
  for (int c = 0; c < D.rank(); ++c)
    for (std::size_t p = 0; p < npts; ++p)
      tens[c * npts + p] = 2.0 * sm[p] * sd[c * npts + p];
  SpectralField visc = div_tensor(dealias(
      SpectralField::from_samples(g, g.dim * g.dim, std::move(tens))));

  SpectralField divu = divergence(u);
  SpectralField force = visc + grad(product(lam_rho, divu));
  // - grad P(rho)
  SpectralField dP_rho = pointwise(rho, params.pressure.dP);
  force = force - product(dP_rho, grad(rho));
  force = force + div_korteweg_general(rho, params);

  Rhs out;
  out.dq = (-1.0) * advect(u, q) - divu;
  out.du = (-1.0) * advect(u, u) + product(inv_rho, force);
  return out;
}

SpectralField effective_velocity(const SpectralField& q, const SpectralField& u,
                                 double mu) {
  return axpy(mu, grad(q), u);
}

Rhs rhs_effective(const SpectralField& q, const SpectralField& v,
                  const Params& params) {
  params.validate(q.grid().dim);
  if (!params.quasi_regime())
    fail_validation("effective-velocity system needs kappa=mu^2, lambda=0, "
                    "shallow-water viscosity, kappa/rho capillarity");
  const double mu = params.mu;
  SpectralField gq = grad(q);
  SpectralField u = axpy(-mu, gq, v);  // u = v - mu grad q

  Rhs out;
  out.dq = mu * laplacian(q) - advect(v, q) - divergence(v) +
           mu * grad_sq(q);
  SpectralField dP_rho =
      pointwise(q, [&](double qq) { return params.pressure.dP(std::exp(qq)); });
  out.du = (-1.0) * advect(u, v) + mu * laplacian(v) + mu * advect(gq, v) -
           product(dP_rho, gq);
  return out;
}

QuasiResidual quasi_solution_residual(const SpectralField& rho1, double mu,
                                      const PressureLaw* restore_pressure) {
  require_positive(rho1, "quasi_solution_residual");
  const Grid& g = rho1.grid();
  SpectralField q1 = log_field(rho1);
  SpectralField u1 = (-mu) * grad(q1);
  SpectralField drho_dt = mu * laplacian(rho1);  // heat law, supplied

  // mass: d rho/dt + div(rho u)
  SpectralField mass_res = drho_dt + divergence(product(rho1, u1));

  // momentum: d(rho u)/dt + div(rho u x u) - div(2 mu rho D(u)) - div K
  SpectralField inv_rho = pointwise(rho1, [](double v) { return 1.0 / v; });
  SpectralField du_dt =
      (-mu) * grad(product(drho_dt, inv_rho));  // -mu grad(d ln rho/dt)
  SpectralField dmom = product(drho_dt, u1) + product(rho1, du_dt);

  SpectralField conv = div_tensor(weighted_outer(rho1, u1, u1));

  SpectralField D = sym_grad(u1);
  const std::size_t npts = g.size();
  const auto& sr = rho1.samples();
  const auto& sd = D.samples();
  std::vector<double> tens(sd.size());
  for (int c = 0; c < D.rank(); ++c)
    for (std::size_t p = 0; p < npts; ++p)
      tens[c * npts + p] = 2.0 * mu * sr[p] * sd[c * npts + p];
  SpectralField visc = div_tensor(dealias(
      SpectralField::from_samples(g, g.dim * g.dim, std::move(tens))));

  SpectralField divK = div_korteweg_log(rho1, mu * mu);

  SpectralField mom_res = dmom + conv - visc - divK;
  double scale = std::max({visc.l2(), divK.l2(), conv.l2(), dmom.l2(), 1e-300});
  if (restore_pressure) {
    SpectralField dP_rho = pointwise(rho1, restore_pressure->dP);
    mom_res = mom_res + product(dP_rho, grad(rho1));
  }

  QuasiResidual out;
  double mass_scale = std::max(drho_dt.l2(), 1e-300);
  out.mass_rel = mass_res.l2() / mass_scale;
  out.momentum_rel = mom_res.l2() / scale;
  out.mass_linf = mass_res.linf() / std::max(drho_dt.linf(), 1e-300);
  out.momentum_linf = mom_res.linf() / std::max(visc.linf(), 1e-300);
  out.momentum_residual = mom_res;
  return out;
}

Rhs rhs_perturbation(const SpectralField& h2, const SpectralField& u2,
                     const SpectralField& rho1, const Params& params) {
  params.validate(h2.grid().dim);
  if (!params.quasi_regime())
    fail_validation("perturbation system needs the quasi-solution regime "
                    "(kappa=mu^2, lambda=0)");
  require_positive(rho1, "rhs_perturbation");
  const double mu = params.mu;
  const double kap = mu * mu;
  const double K = params.dP1;

  SpectralField q1 = log_field(rho1);
  SpectralField gq1 = grad(q1);
  SpectralField u1 = (-mu) * gq1;
  SpectralField gh2 = grad(h2);
  SpectralField Du1 = sym_grad(u1);
  SpectralField Du2 = sym_grad(u2);

  Rhs out;
  out.dq = (-1.0) * divergence(u2) + mu * advect(gq1, h2) - advect(u2, q1) -
           advect(u2, h2);

  SpectralField du = mu * laplacian(u2);
  du = du + mu * grad(divergence(u2));
  du = du + kap * grad_laplacian(h2);
  du = du + (-K) * gh2;
  du = du + 2.0 * mu * vec_dot_tensor(gq1, Du2);
  du = du + 2.0 * mu * vec_dot_tensor(gh2, Du1);
  du = du - advect(u1, u2);
  du = du - advect(u2, u1);
  // mu^2 grad(grad ln rho1 . grad h2)
  du = du + kap * grad(dot(gq1, gh2));
  // remainders
  du = du - advect(u2, u2);
  du = du + 2.0 * mu * vec_dot_tensor(gh2, Du2);
  du = du + (-K) * gq1;
  du = du + (0.5 * kap) * grad(grad_sq(h2));
  out.du = du;
  return out;
}

}  // namespace nsk
