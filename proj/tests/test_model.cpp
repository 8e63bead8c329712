#include <doctest.h>

#include <cmath>

#include "nsk/initial_data.hpp"
#include "nsk/model.hpp"
#include "nsk/operators.hpp"

using namespace nsk;

namespace {

double rel(const SpectralField& a, const SpectralField& b) {
  return (a - b).l2() / std::max({a.l2(), b.l2(), 1e-300});
}

Params shallow_params(double mu, double lambda, double kappa, double K) {
  Params p;
  p.mu = mu;
  p.lambda = lambda;
  p.kappa = kappa;
  p.capillarity = CapillarityForm::OverRho;
  p.viscosity = ViscosityForm::ShallowWater;
  p.pressure = PressureLaw::linear(K);
  p.dP1 = K;
  return p;
}

// zero every coefficient except the +-k lattice modes of a 1D grid
SpectralField keep_mode(const SpectralField& f, int k) {
  const Grid& g = f.grid();
  std::vector<cplx> c(f.coeffs());
  for (std::size_t j = 0; j < g.size(); ++j) {
    auto kv = g.k_vector(j);
    if (std::abs(kv[0]) != k)
      for (int comp = 0; comp < f.rank(); ++comp)
        c[comp * g.size() + j] = cplx(0.0);
  }
  return SpectralField::from_coeffs(g, f.rank(), std::move(c));
}

}  // namespace

TEST_CASE("pressure laws and potentials") {
  PressureLaw lin = PressureLaw::linear(2.0);
  PressureEval at1 = pressure_eval(lin, 1.0);
  CHECK(at1.P == doctest::Approx(2.0));
  CHECK(at1.F == doctest::Approx(0.0));
  // Pi'(1) = 0 by a centered finite difference
  double d = 1e-6;
  CHECK(std::abs(lin.Pi(1.0 + d) - lin.Pi(1.0 - d)) / (2 * d) < 1e-5);
  // Pi(e) - Pi(1) = K for the linear law
  CHECK(lin.Pi(M_E) - lin.Pi(1.0) == doctest::Approx(2.0).epsilon(1e-12));

  // gamma law: s Pi'(s) - Pi(s) = P(s) via finite differences
  PressureLaw gam = PressureLaw::gamma_law(1.3, 1.4);
  for (double s : {0.6, 0.9, 1.7, 2.4}) {
    double dPi = (gam.Pi(s + d) - gam.Pi(s - d)) / (2 * d);
    CHECK(s * dPi - gam.Pi(s) == doctest::Approx(gam.P(s)).epsilon(1e-8));
  }

  // numerical-quadrature route agrees with the closed forms
  PressureLaw num = PressureLaw::from_p(gam.P, gam.dP);
  for (double s : {0.5, 1.0, 1.8, 3.0}) {
    CHECK(num.Pi(s) == doctest::Approx(gam.Pi(s)).epsilon(1e-10));
    CHECK(num.F(s) == doctest::Approx(gam.F(s)).epsilon(1e-10));
  }

  CHECK_THROWS_AS(pressure_eval(lin, -1.0), Error);
  CHECK_THROWS_AS(pressure_eval(lin, 0.0), Error);
}

TEST_CASE("params validation and regime detection") {
  Params p = shallow_params(1.0, -3.0, 1.0, 1.0);
  CHECK_THROWS_WITH_AS(p.validate(1), "2mu+lambda>0 violated", Error);
  Params ok = shallow_params(1.0, 0.0, 0.9, 1.0);
  ok.validate(2);
  CHECK_FALSE(ok.quasi_regime());
  Params quasi = shallow_params(0.8, 0.0, 0.64, 1.0);
  CHECK(quasi.quasi_regime());
  LinearCoeffs lc = ok.linearization();
  CHECK(lc.a == 1.0);
  CHECK(lc.b == 1.0);
  CHECK(lc.c == 0.9);
  CHECK(lc.d == 1.0);
}

TEST_CASE("korteweg tensor vanishes on constant densities") {
  Grid g(2, 32, Grid::two_pi());
  std::vector<double> s(g.size(), 1.7);
  SpectralField rho = SpectralField::from_samples(g, 1, s);
  Params pc = shallow_params(1.0, 0.0, 0.7, 1.0);
  pc.capillarity = CapillarityForm::Constant;
  CHECK(div_korteweg_general(rho, pc).linf() < 1e-12);
  CHECK(div_korteweg_log(rho, 0.7).linf() < 1e-12);
  CHECK(div_korteweg_viscous(rho, 0.7).linf() < 1e-12);
}

TEST_CASE("constant capillarity reduces to kappa rho grad lap rho") {
  for (int dim : {1, 2}) {
    Grid g(dim, 64, Grid::two_pi());
    SpectralField rho = random_positive_density(g, 0.05, 900 + dim);
    Params pc = shallow_params(1.0, 0.0, 0.8, 1.0);
    pc.capillarity = CapillarityForm::Constant;
    SpectralField a = div_korteweg_general(rho, pc);
    SpectralField b = 0.8 * product(rho, grad_laplacian(rho));
    CHECK(rel(a, b) < 1e-8);
  }
}

TEST_CASE("three forms of the capillary tensor agree in the kappa/rho regime") {
  for (int dim : {1, 2}) {
    Grid g(dim, 64, Grid::two_pi());
    Params p = shallow_params(1.0, 0.0, 0.7, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
      SpectralField rho = random_positive_density(g, 0.05, 100 * dim + trial);
      SpectralField a = div_korteweg_general(rho, p);
      SpectralField b = div_korteweg_log(rho, 0.7);
      SpectralField c = div_korteweg_viscous(rho, 0.7);
      CHECK(rel(a, b) < 1e-8);
      CHECK(rel(b, c) < 1e-8);
    }
  }
}

TEST_CASE("vacuum densities are rejected by the tensor routines") {
  Grid g(1, 32, Grid::two_pi());
  std::vector<double> s(g.size(), 1.0);
  s[4] = -0.2;
  SpectralField rho = SpectralField::from_samples(g, 1, s);
  Params p = shallow_params(1.0, 0.0, 1.0, 1.0);
  CHECK_THROWS_AS(div_korteweg_general(rho, p), Error);
  CHECK_THROWS_AS(div_korteweg_log(rho, 1.0), Error);
}

TEST_CASE("nhv1 right-hand side at equilibrium") {
  Grid g(1, 64, Grid::two_pi());
  Params p = shallow_params(1.0, 0.3, 1.0, 1.0);
  Rhs r = rhs_nhv1(SpectralField(g, 1), SpectralField(g, 1), p);
  CHECK(r.dq.linf() < 1e-14);
  CHECK(r.du.linf() < 1e-14);
  // nonzero constant density is an equilibrium too
  std::vector<double> s(g.size(), 0.4);
  Rhs rc = rhs_nhv1(SpectralField::from_samples(g, 1, s), SpectralField(g, 1),
                    p);
  CHECK(rc.dq.linf() < 1e-12);
  CHECK(rc.du.linf() < 1e-12);
}

TEST_CASE("nhv1 linear part matches the (N1) symbol on a single mode") {
  Grid g(1, 64, Grid::two_pi());
  Params p = shallow_params(1.0, 0.2, 0.9, 1.3);
  const int k = 2;
  std::vector<double> qs(g.size());
  for (int j = 0; j < g.n; ++j) qs[j] = 1e-5 * std::cos(k * j * g.spacing());
  SpectralField q = SpectralField::from_samples(g, 1, qs);
  SpectralField u(g, 1);
  Rhs r = rhs_nhv1(q, u, p);
  // the mode-k component of du/dt is exactly kappa grad lap q - K grad q
  SpectralField lin = keep_mode(r.du, k);
  SpectralField expected =
      axpy(0.9, grad_laplacian(q), (-1.3) * grad(q));
  CHECK(rel(lin, expected) < 1e-8);
  CHECK(keep_mode(r.dq, k).l2() < 1e-18);  // dq = -div u - u.grad q = 0
}

TEST_CASE("linearization error is quadratic in the amplitude") {
  Grid g(1, 64, Grid::two_pi());
  Params p = shallow_params(1.0, 0.1, 1.0, 1.0);
  LinearCoeffs lc = p.linearization();
  SpectralField q0 = random_band_limited(g, 1, 1, 4, 1.0, 41);
  SpectralField u0 = random_band_limited(g, 1, 1, 4, 1.0, 42);
  auto mismatch = [&](double eps) {
    SpectralField q = eps * q0;
    SpectralField u = eps * u0;
    Rhs full = rhs_nhv1(q, u, p);
    SpectralField lin_du =
        axpy(lc.a, laplacian(u),
             axpy(lc.b, grad(divergence(u)),
                  axpy(lc.c, grad_laplacian(q), (-lc.d) * grad(q))));
    SpectralField lin_dq = (-1.0) * divergence(u);
    return stack(full.dq - lin_dq, full.du - lin_du).l2();
  };
  double ratio = mismatch(1e-3) / mismatch(5e-4);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("nhv1 equals the density-form system transported to q variables") {
  for (int dim : {1, 2}) {
    Grid g(dim, 64, Grid::two_pi());
    Params p = shallow_params(0.9, 0.2, 0.8, 1.1);
    SpectralField q = random_band_limited(g, 1, 1, 4, 0.02, 51 + dim);
    SpectralField u = random_band_limited(g, dim, 1, 4, 0.02, 52 + dim);
    Rhs a = rhs_nhv1(q, u, p);
    Rhs b = rhs_rho_form(q, u, p);
    CHECK(rel(a.dq, b.dq) < 1e-6);
    CHECK(rel(a.du, b.du) < 1e-6);
  }
}

TEST_CASE("effective velocity basics") {
  Grid g(1, 64, Grid::two_pi());
  Params p = shallow_params(0.8, 0.0, 0.64, 1.0);
  REQUIRE(p.quasi_regime());
  SpectralField q = random_band_limited(g, 1, 1, 5, 0.1, 61);
  // u = -mu grad q gives v = 0
  SpectralField u = (-0.8) * grad(q);
  CHECK(effective_velocity(q, u, 0.8).l2() < 1e-14);

  // equilibrium: constant q, v = 0
  std::vector<double> qs(g.size(), 0.3);
  Rhs r = rhs_effective(SpectralField::from_samples(g, 1, qs),
                        SpectralField(g, 1), p);
  CHECK(r.dq.linf() < 1e-12);
  CHECK(r.du.linf() < 1e-12);

  // outside the regime the call is rejected
  Params wrong = shallow_params(0.8, 0.0, 0.5, 1.0);
  CHECK_THROWS_AS(rhs_effective(q, u, wrong), Error);
}

TEST_CASE("effective system is the change of variables of nhv1") {
  Grid g(1, 64, Grid::two_pi());
  Params p = shallow_params(0.8, 0.0, 0.64, 1.0);
  SpectralField q = random_band_limited(g, 1, 1, 4, 0.02, 71);
  SpectralField u = random_band_limited(g, 1, 1, 4, 0.02, 72);
  SpectralField v = effective_velocity(q, u, p.mu);
  Rhs nhv = rhs_nhv1(q, u, p);
  Rhs eff = rhs_effective(q, v, p);
  // dq/dt agrees, and dv/dt = du/dt + mu grad(dq/dt)
  CHECK(rel(nhv.dq, eff.dq) < 1e-8);
  SpectralField dv_from_nhv = axpy(p.mu, grad(nhv.dq), nhv.du);
  CHECK(rel(dv_from_nhv, eff.du) < 1e-8);
}

TEST_CASE("quasi-solution residuals") {
  Grid g(1, 128, Grid::two_pi());
  const double mu = 0.7;

  // rho1 = 1: everything vanishes
  std::vector<double> ones(g.size(), 1.0);
  QuasiResidual triv = quasi_solution_residual(
      SpectralField::from_samples(g, 1, ones), mu, nullptr);
  CHECK(triv.momentum_rel < 1e-12);

  // heat-evolved bump: residuals at discretization level
  SpectralField rho0 = gaussian_bump(g, 0.3, 0.1);
  SpectralField rho1 = heat_flow(rho0, mu, 0.05);
  QuasiResidual qr = quasi_solution_residual(rho1, mu, nullptr);
  CHECK(qr.mass_rel < 1e-8);
  CHECK(qr.momentum_rel < 1e-8);

  // with the pressure restored the residual is exactly grad P
  PressureLaw law = PressureLaw::linear(1.2);
  QuasiResidual qp = quasi_solution_residual(rho1, mu, &law);
  CHECK(rel(qp.momentum_residual, 1.2 * grad(rho1)) < 1e-8);

  std::vector<double> bad(g.size(), 1.0);
  bad[3] = 1e-9;
  CHECK_THROWS_AS(quasi_solution_residual(
                      SpectralField::from_samples(g, 1, bad), mu, nullptr),
                  Error);
}

TEST_CASE("perturbation system around the quasi-solution") {
  Grid g(1, 64, Grid::two_pi());
  Params p = shallow_params(0.8, 0.0, 0.64, 1.2);
  REQUIRE(p.quasi_regime());
  SpectralField rho1 = gaussian_bump(g, 0.2, 0.12);

  // zero perturbation: remainder reduces to (0, -K grad ln rho1)
  Rhs r0 = rhs_perturbation(SpectralField(g, 1), SpectralField(g, 1), rho1, p);
  CHECK(r0.dq.linf() < 1e-12);
  SpectralField lnr = pointwise(rho1, [](double v) { return std::log(v); });
  CHECK(rel(r0.du, (-1.2) * grad(lnr)) < 1e-10);

  // rho1 = 1 degenerates to nhv1 with kappa = mu^2, lambda = 0
  std::vector<double> ones(g.size(), 1.0);
  SpectralField flat = SpectralField::from_samples(g, 1, ones);
  SpectralField h2 = random_band_limited(g, 1, 1, 4, 0.05, 81);
  SpectralField u2 = random_band_limited(g, 1, 1, 4, 0.05, 82);
  Rhs pert = rhs_perturbation(h2, u2, flat, p);
  Rhs nhv = rhs_nhv1(h2, u2, p);
  CHECK(rel(pert.dq, nhv.dq) < 1e-10);
  CHECK(rel(pert.du, nhv.du) < 1e-10);

  // reconstruction: q = ln rho1 + h2, u = u1 + u2 follows nhv1
  Rhs pert_bump = rhs_perturbation(h2, u2, rho1, p);
  SpectralField q = lnr + h2;
  SpectralField u1 = (-p.mu) * grad(lnr);
  SpectralField u = u1 + u2;
  Rhs full = rhs_nhv1(q, u, p);
  // background rates: dq1/dt = mu(lap q1 + |grad q1|^2), du1/dt = -mu grad(dq1/dt)
  SpectralField dq1 = p.mu * (laplacian(lnr) + grad_sq(lnr));
  SpectralField du1 = (-p.mu) * grad(dq1);
  CHECK(rel(full.dq, dq1 + pert_bump.dq) < 1e-6);
  CHECK(rel(full.du, du1 + pert_bump.du) < 1e-6);

  Params wrong = shallow_params(0.8, 0.0, 0.3, 1.2);
  CHECK_THROWS_AS(rhs_perturbation(h2, u2, rho1, wrong), Error);
}
