#include <doctest.h>

#include <cmath>

#include "nsk/diagnostics.hpp"
#include "nsk/initial_data.hpp"
#include "nsk/operators.hpp"
#include "nsk/stepper.hpp"

using namespace nsk;

namespace {

double rel(const SpectralField& a, const SpectralField& b) {
  return (a - b).l2() / std::max({a.l2(), b.l2(), 1e-300});
}

Params shallow(double mu, double lambda, double kappa, double K) {
  Params p;
  p.mu = mu;
  p.lambda = lambda;
  p.kappa = kappa;
  p.capillarity = CapillarityForm::OverRho;
  p.viscosity = ViscosityForm::ShallowWater;
  p.pressure = K > 0.0 ? PressureLaw::linear(K) : PressureLaw::zero();
  p.dP1 = K;
  return p;
}

SimulationSetup small_run(const Grid& g, double amp, std::uint64_t seed) {
  SimulationSetup setup;
  setup.variant = SystemVariant::Nhv1;
  setup.params = shallow(1.0, 0.0, 1.0, 1.0);
  setup.grid = g;
  setup.initial.q = random_band_limited(g, 1, 1, 4, amp, seed);
  setup.initial.u = random_band_limited(g, g.dim, 1, 4, amp, seed + 1);
  setup.stepper = {1e-3, 0.02, Scheme::ExpRk2, 5, 4};
  return setup;
}

}  // namespace

TEST_CASE("solve_heat basics") {
  Grid g(1, 64, Grid::two_pi());
  // constant data stays constant
  std::vector<double> c(g.size(), 1.4);
  SpectralField rc = solve_heat(SpectralField::from_samples(g, 1, c), 0.9, 2.0);
  CHECK(rc.max_value() == doctest::Approx(1.4).epsilon(1e-14));
  CHECK(rc.min_value() == doctest::Approx(1.4).epsilon(1e-14));

  // single mode decays at the analytic rate
  std::vector<double> s(g.size());
  for (int j = 0; j < g.n; ++j) s[j] = 1.0 + 0.2 * std::cos(4.0 * j * g.spacing());
  SpectralField r0 = SpectralField::from_samples(g, 1, s);
  SpectralField rt = solve_heat(r0, 0.5, 0.3);
  double factor = std::exp(-0.5 * 16.0 * 0.3);
  for (int j = 0; j < g.n; ++j)
    CHECK(rt.sample(0, j) ==
          doctest::Approx(1.0 + 0.2 * factor * std::cos(4.0 * j * g.spacing()))
              .epsilon(1e-12));
  // mean conserved exactly
  CHECK(rt.mean() == doctest::Approx(r0.mean()).epsilon(1e-14));

  // max principle on a bump over 50 samples
  SpectralField bump = gaussian_bump(g, 0.4, 0.07);
  double prev = bump.max_value();
  for (int i = 1; i <= 50; ++i) {
    double t = 0.5 * i / 50.0;
    double m = solve_heat(bump, 1.0, t).max_value();
    CHECK(m <= prev * (1.0 + 1e-10));
    prev = m;
  }

  std::vector<double> bad(g.size(), 1.0);
  bad[0] = -0.5;
  CHECK_THROWS_AS(solve_heat(SpectralField::from_samples(g, 1, bad), 1.0, 0.1),
                  Error);
}

TEST_CASE("muted stepper reproduces the exact semigroup") {
  Grid g(1, 64, Grid::two_pi());
  SimulationSetup setup = small_run(g, 0.05, 900);
  setup.mute_nonlinearity = true;
  setup.stepper.dt = 5e-3;
  ExponentialStepper st(setup);
  FluidState s = setup.initial;
  LinearCoeffs lc = setup.params.linearization();
  for (int k = 1; k <= 5; ++k) {
    s = st.step(s);
    FluidState exact = apply_semigroup(setup.initial, k * setup.stepper.dt, lc);
    CHECK(rel(s.q, exact.q) < 1e-12);
    CHECK(rel(s.u, exact.u) < 1e-12);
  }
}

TEST_CASE("equilibrium states are fixed points of the stepper") {
  Grid g(1, 64, Grid::two_pi());
  SimulationSetup setup = small_run(g, 0.05, 901);
  std::vector<double> qc(g.size(), 0.2);
  setup.initial.q = SpectralField::from_samples(g, 1, qc);
  setup.initial.u = SpectralField(g, 1);
  ExponentialStepper st(setup);
  FluidState s1 = st.step(setup.initial);
  CHECK((s1.q - setup.initial.q).linf() < 1e-13);
  CHECK(s1.u.linf() < 1e-13);
}

TEST_CASE("order of accuracy by step halving") {
  Grid g(1, 64, Grid::two_pi());
  const double T = 0.02;

  auto run = [&](Scheme scheme, double dt) {
    SimulationSetup setup = small_run(g, 0.3, 902);
    setup.stepper.dt = dt;
    setup.stepper.scheme = scheme;
    ExponentialStepper st(setup);
    FluidState s = setup.initial;
    int n = static_cast<int>(std::llround(T / dt));
    for (int k = 0; k < n; ++k) s = st.step(s);
    return s;
  };

  FluidState ref = run(Scheme::ExpRk2, T / 512.0);
  auto err = [&](Scheme scheme, double dt) {
    FluidState s = run(scheme, dt);
    return stack(s.q - ref.q, s.u - ref.u).l2();
  };

  double euler_ratio = err(Scheme::ExpEuler, T / 16.0) /
                       err(Scheme::ExpEuler, T / 32.0);
  CHECK(euler_ratio >= 1.7);
  CHECK(euler_ratio <= 2.3);

  double rk2_ratio = err(Scheme::ExpRk2, T / 16.0) /
                     err(Scheme::ExpRk2, T / 32.0);
  CHECK(rk2_ratio >= 3.5);
  CHECK(rk2_ratio <= 4.5);
}

TEST_CASE("simulate: equilibrium run is a constant trajectory") {
  Grid g(1, 64, Grid::two_pi());
  SimulationSetup setup = small_run(g, 0.05, 903);
  std::vector<double> qc(g.size(), 0.1);
  setup.initial.q = SpectralField::from_samples(g, 1, qc);
  setup.initial.u = SpectralField(g, 1);
  Trajectory traj = simulate(setup);
  CHECK_FALSE(traj.aborted);
  for (const auto& s : traj.snapshots) {
    CHECK((s.q - setup.initial.q).linf() < 1e-12);
    CHECK(s.u.linf() < 1e-12);
  }
}

TEST_CASE("simulate: pressureless quasi-solution is reproduced") {
  Grid g(1, 64, Grid::two_pi());
  SimulationSetup setup;
  setup.variant = SystemVariant::Nhv1;
  setup.params = shallow(0.8, 0.0, 0.64, 0.0);  // kappa = mu^2, no pressure
  setup.grid = g;
  SpectralField rho1_0 = gaussian_bump(g, 0.25, 0.1);
  setup.initial = quasi_solution_data(rho1_0, SpectralField(g, 1),
                                      SpectralField(g, 1), 0.8);
  setup.stepper = {5e-4, 0.05, Scheme::ExpRk2, 5, 20};
  Trajectory traj = simulate(setup);
  REQUIRE_FALSE(traj.aborted);
  double worst = 0.0;
  for (const auto& s : traj.snapshots) {
    SpectralField rho1 = solve_heat(rho1_0, 0.8, s.time);
    SpectralField q1 = pointwise(rho1, [](double v) { return std::log(v); });
    SpectralField u1 = (-0.8) * grad(q1);
    worst = std::max({worst, (s.q - q1).linf(), (s.u - u1).linf()});
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("simulate: cfl violation aborts gracefully") {
  Grid g(1, 64, Grid::two_pi());
  SimulationSetup setup = small_run(g, 0.05, 904);
  setup.initial.u = random_band_limited(g, 1, 1, 3, 2.0, 905);
  setup.stepper.dt = 0.05;  // far beyond 0.25 h / max|u|
  setup.stepper.T = 0.5;
  Trajectory traj = simulate(setup);
  CHECK(traj.aborted);
  CHECK(traj.abort_reason.find("CFL") != std::string::npos);
  CHECK(traj.snapshots.size() >= 1);  // partial trajectory kept
}

TEST_CASE("simulate: heat variant monitors the maximum principle") {
  Grid g(1, 64, Grid::two_pi());
  SimulationSetup setup;
  setup.variant = SystemVariant::Heat;
  setup.params = shallow(1.0, 0.0, 1.0, 1.0);
  setup.grid = g;
  SpectralField rho0 = gaussian_bump(g, 0.4, 0.08);
  setup.initial.q = pointwise(rho0, [](double v) { return std::log(v); });
  setup.initial.u = SpectralField(g, 1);
  setup.stepper = {1e-2, 0.5, Scheme::ExpRk2, 5, 5};
  Trajectory traj = simulate(setup);
  LinfSeries ls = linf_monitor(traj);
  for (std::size_t i = 1; i < ls.rho_sup.size(); ++i)
    CHECK(ls.rho_sup[i] <= ls.rho_sup[i - 1] * (1.0 + 1e-10));
}

TEST_CASE("simulate: density jump is smoothed immediately") {
  Grid g(1, 256, Grid::two_pi());
  SimulationSetup setup;
  setup.variant = SystemVariant::Nhv1;
  setup.params = shallow(1.0, 0.0, 1.0, 1.0);
  setup.grid = g;
  SpectralField rho0 = density_jump(g, 0.25, 1.0, 2.0);
  setup.initial.q = pointwise(rho0, [](double v) { return std::log(v); });
  setup.initial.u = SpectralField(g, 1);
  setup.stepper = {1e-5, 0.01, Scheme::ExpRk2, 5, 200};
  Trajectory traj = simulate(setup);
  REQUIRE_FALSE(traj.aborted);
  // the top block carries initial jump mass and decays by >= 10x; the lower
  // blocks persist on the slow diffusive timescale of the interface
  paley::BlockRange range = paley::block_range(g);
  auto high_mass = [&](const SpectralField& q) {
    return std::pow(2.0, 0.5 * range.jmax) *
           block_lp_norm(q, range.jmax, 2.0);
  };
  double m0 = high_mass(traj.snapshots.front().q);
  double m1 = high_mass(traj.snapshots.back().q);
  CHECK(m0 > 10.0 * m1);
  // smoothed solution has finite high-regularity norm at t > 0
  double high_reg =
      besov_norm(traj.snapshots.back().q, 0.5 * g.dim + 2.0, 2.0, INFINITY);
  CHECK(std::isfinite(high_reg));
}

TEST_CASE("picard iterates vanish for zero data and contract for small data") {
  Grid g(1, 64, Grid::two_pi());
  Params p = shallow(1.0, 0.0, 1.0, 1.0);

  FluidState zero;
  zero.q = SpectralField(g, 1);
  zero.u = SpectralField(g, 1);
  PicardResult rz = picard_solve(zero, 0.1, 3, p, 16);
  for (double n : rz.iterate_norms) CHECK(n == 0.0);

  FluidState s0;
  s0.q = random_band_limited(g, 1, 1, 4, 5e-3, 906);
  s0.u = random_band_limited(g, 1, 1, 4, 5e-3, 907);
  PicardResult pr = picard_solve(s0, 0.1, 5, p, 32);
  REQUIRE(pr.ratios.size() >= 3);
  for (double r : pr.ratios) CHECK(r < 1.0);
  CHECK(pr.contracting);
}

TEST_CASE("picard limit agrees with the exponential stepper") {
  Grid g(1, 64, Grid::two_pi());
  SimulationSetup setup = small_run(g, 5e-3, 908);
  const double T = 0.1;
  const int nsteps = 50;
  PicardResult pr =
      picard_solve(setup.initial, T, 6, setup.params, nsteps);
  setup.stepper = {T / nsteps, T, Scheme::ExpRk2, 6, nsteps};
  Trajectory traj = simulate(setup);
  const FluidState& ref = traj.snapshots.back();
  double r = stack(pr.limit_at_T.q - ref.q, pr.limit_at_T.u - ref.u).l2() /
             stack(ref.q, ref.u).l2();
  CHECK(r <= 1e-4);
}

TEST_CASE("simulate with the picard scheme produces a trajectory") {
  Grid g(1, 64, Grid::two_pi());
  SimulationSetup setup = small_run(g, 5e-3, 909);
  setup.stepper = {0.1 / 32, 0.1, Scheme::Picard, 5, 8};
  Trajectory traj = simulate(setup);
  CHECK_FALSE(traj.aborted);
  CHECK(traj.snapshots.size() == 5);  // 0, 8, 16, 24, 32
  CHECK(traj.snapshots.back().time == doctest::Approx(0.1));
}
