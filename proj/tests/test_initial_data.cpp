#include <doctest.h>

#include <cmath>

#include "nsk/initial_data.hpp"
#include "nsk/operators.hpp"
#include "nsk/paley.hpp"

using namespace nsk;

TEST_CASE("homogeneous profile validation and smooth limit") {
  Grid g(1, 256, Grid::two_pi());
  CHECK_THROWS_AS(homogeneous_profile(0.0, g), Error);
  CHECK_THROWS_AS(homogeneous_profile(1.5, g), Error);

  // small sigma: steep spectral decay, high blocks carry almost nothing
  SpectralField u = homogeneous_profile(0.05, g);
  paley::BlockRange r = paley::block_range(g);
  double low = block_lp_norm(u, r.jmin, 2.0);
  double high = block_lp_norm(u, r.jmax, 2.0);
  CHECK(high < 1e-2 * low);
}

TEST_CASE("homogeneous profile block norms shift by 2^(sigma - N/2)") {
  Grid g(1, 1024, Grid::two_pi());
  const double sigma = 0.5;
  SpectralField u = homogeneous_profile(sigma, g);
  paley::BlockRange mid = paley::middle_third(paley::block_range(g));
  for (int j = mid.jmin; j < mid.jmax; ++j) {
    double ratio = block_lp_norm(u, j + 1, 2.0) / block_lp_norm(u, j, 2.0);
    double expected = std::pow(2.0, sigma - 0.5 * g.dim);
    CHECK(std::abs(ratio / expected - 1.0) < 0.1);
  }
}

TEST_CASE("truncated profile kills the blocks below l0 exactly") {
  Grid g(1, 1024, Grid::two_pi());
  const int l0 = 4;
  TruncatedProfile tp = truncated_profile(0.08, l0, g, 2.0);
  paley::BlockRange r = paley::block_range(g);
  for (int l = r.jmin; l < l0 - 1; ++l)
    CHECK(block_lp_norm(tp.u0, l, 2.0) == 0.0);
  CHECK(block_lp_norm(tp.u0, l0, 2.0) > 0.0);
  CHECK(tp.norm_besov_inf > 0.0);
  CHECK(tp.norm_besov_r >= tp.norm_besov_inf);

  CHECK_THROWS_AS(truncated_profile(0.2, l0, g, 2.0), Error);
  CHECK_THROWS_AS(truncated_profile(0.05, 40, g, 2.0), Error);
}

TEST_CASE("truncated profile norms follow the 2^(-l0 eps) trend") {
  Grid g(1, 4096, Grid::two_pi());
  const double eps = 0.08;
  double prev = 0.0;
  for (int l0 : {3, 4, 5}) {
    TruncatedProfile tp = truncated_profile(eps, l0, g, 2.0);
    if (prev > 0.0) {
      double drop = tp.norm_besov_inf / prev;
      CHECK(std::abs(drop / std::pow(2.0, -eps) - 1.0) < 0.2);
    }
    prev = tp.norm_besov_inf;
  }
}

TEST_CASE("scaled profile identity and norm relations") {
  Grid g(1, 1024, Grid::two_pi());
  SpectralField phi = centered_bump(g, 0.4, 0.05);
  CHECK((scaled_profile(phi, 1) - phi).linf() == 0.0);
  CHECK_THROWS_AS(scaled_profile(phi, 3), Error);
  CHECK_THROWS_AS(scaled_profile(phi, 2048), Error);

  SpectralField h = scaled_profile(phi, 4);
  // sup norm is exactly invariant (samples are a subset)
  CHECK(h.linf() == doctest::Approx(phi.linf()).epsilon(1e-13));
  // B^{N/2}_{2,1} invariant within band effects
  double n_phi = besov_norm(phi, 0.5, 2.0, 1.0);
  double n_h = besov_norm(h, 0.5, 2.0, 1.0);
  CHECK(std::abs(n_h / n_phi - 1.0) <= 0.10);
  // B^{N/2-2}_{2,1} scales by lambda^-2 within band effects
  double l_phi = besov_norm(phi, -1.5, 2.0, 1.0);
  double l_h = besov_norm(h, -1.5, 2.0, 1.0);
  CHECK(std::abs(l_h / (l_phi / 16.0) - 1.0) <= 0.15);
}

TEST_CASE("density jump shape and guards") {
  Grid g(1, 256, Grid::two_pi());
  SpectralField flat = density_jump(g, 0.25, 0.0, 2.0);
  CHECK(flat.max_value() == doctest::Approx(1.0));
  CHECK(flat.min_value() == doctest::Approx(1.0));

  SpectralField rho = density_jump(g, 0.25, 1.0, 2.0);
  SpectralField q = pointwise(rho, [](double v) { return std::log(v); });
  CHECK(std::abs(q.linf() - std::log(2.0)) < 1e-3);
  CHECK(rho.min_value() >= 1.0 - 1e-12);

  CHECK_THROWS_AS(density_jump(g, 0.25, -1.0, 2.0), Error);
  CHECK_THROWS_AS(density_jump(g, 0.25, 0.5, 0.5), Error);
}

TEST_CASE("gaussian bump density stays off the vacuum floor") {
  Grid g(2, 32, Grid::two_pi());
  SpectralField rho = gaussian_bump(g, 0.4, 0.1);
  CHECK(rho.min_value() >= 1.0 - 1e-12);
  CHECK(rho.max_value() <= 1.4 + 1e-9);
  CHECK_THROWS_AS(gaussian_bump(g, -1.0001, 0.1), Error);
}

TEST_CASE("quasi solution data composes and splits exactly") {
  Grid g(1, 128, Grid::two_pi());
  SpectralField rho1 = gaussian_bump(g, 0.3, 0.1);
  SpectralField h2 = random_band_limited(g, 1, 1, 5, 0.05, 61);
  SpectralField u2 = random_band_limited(g, 1, 1, 5, 0.05, 62);
  const double mu = 0.8;

  FluidState s = quasi_solution_data(rho1, h2, u2, mu);
  SpectralField h2b, u2b;
  split_quasi_solution_data(s, rho1, mu, &h2b, &u2b);
  CHECK((h2b - h2).linf() < 1e-14);
  CHECK((u2b - u2).linf() < 1e-14);

  // pure quasi-solution data: u0 = -mu grad ln rho1
  FluidState pure =
      quasi_solution_data(rho1, SpectralField(g, 1), SpectralField(g, 1), mu);
  SpectralField lnr = pointwise(rho1, [](double v) { return std::log(v); });
  CHECK((pure.q - lnr).linf() < 1e-14);
  CHECK((pure.u - (-mu) * grad(lnr)).linf() < 1e-13);

  std::vector<double> bad(g.size(), 1.0);
  bad[7] = 1e-9;
  CHECK_THROWS_AS(quasi_solution_data(SpectralField::from_samples(g, 1, bad),
                                      h2, u2, mu),
                  Error);
}

TEST_CASE("random band-limited fields are deterministic in the seed") {
  Grid g(2, 32, Grid::two_pi());
  SpectralField a = random_band_limited(g, 2, 2, 6, 1.5, 999);
  SpectralField b = random_band_limited(g, 2, 2, 6, 1.5, 999);
  CHECK((a - b).linf() == 0.0);
  CHECK(a.l2() == doctest::Approx(1.5).epsilon(1e-12));
  // support inside the requested band
  const auto& c = a.coeffs();
  for (std::size_t j = 0; j < g.size(); ++j) {
    auto k = g.k_vector(j);
    double kk = std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1]);
    if (kk > 6.6 && std::abs(c[j]) > 1e-12) FAIL("mode outside band");
  }
  CHECK_THROWS_AS(random_band_limited(g, 1, 4, 2, 1.0, 1), Error);
}
