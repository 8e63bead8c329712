#include <doctest.h>

#include <cmath>

#include "nsk/initial_data.hpp"
#include "nsk/operators.hpp"

using namespace nsk;

namespace {

double rel(const SpectralField& a, const SpectralField& b) {
  return (a - b).l2() / std::max({a.l2(), b.l2(), 1e-300});
}

// Exact product of two band-limited fields through a twice-finer grid:
// embed the spectra, multiply there (alias-free), truncate back.
SpectralField padded_product(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid();
  Grid fine(g.dim, 2 * g.n, g.length);
  auto embed = [&](const SpectralField& f) {
    std::vector<cplx> out(fine.size(), cplx(0.0));
    const auto& c = f.coeffs();
    const double scale = std::pow(2.0, g.dim);
    for (std::size_t j = 0; j < g.size(); ++j) {
      auto k = g.k_vector(j);
      std::size_t dst = 0, mult = 1;
      for (int d = 0; d < g.dim; ++d) {
        int idx = k[d] >= 0 ? k[d] : k[d] + fine.n;
        dst += static_cast<std::size_t>(idx) * mult;
        mult *= fine.n;
      }
      out[dst] = scale * c[j];
    }
    return SpectralField::from_coeffs(fine, 1, std::move(out));
  };
  SpectralField fa = embed(a), fb = embed(b);
  const auto& sa = fa.samples();
  const auto& sb = fb.samples();
  std::vector<double> prod(fine.size());
  for (std::size_t j = 0; j < fine.size(); ++j) prod[j] = sa[j] * sb[j];
  SpectralField fp = SpectralField::from_samples(fine, 1, std::move(prod));
  // truncate to the coarse spectrum
  std::vector<cplx> out(g.size(), cplx(0.0));
  const auto& cp = fp.coeffs();
  const double scale = std::pow(2.0, g.dim);
  for (std::size_t j = 0; j < g.size(); ++j) {
    auto k = g.k_vector(j);
    std::size_t src = 0, mult = 1;
    for (int d = 0; d < g.dim; ++d) {
      int idx = k[d] >= 0 ? k[d] : k[d] + fine.n;
      src += static_cast<std::size_t>(idx) * mult;
      mult *= fine.n;
    }
    out[j] = cp[src] / scale;
  }
  return SpectralField::from_coeffs(g, 1, std::move(out));
}

}  // namespace

TEST_CASE("gradient of a single sine mode") {
  Grid g(1, 64, 4.0);
  std::vector<double> s(g.size());
  const double k1 = Grid::two_pi() / g.length;
  for (int j = 0; j < g.n; ++j) s[j] = std::sin(k1 * j * g.spacing());
  SpectralField f = SpectralField::from_samples(g, 1, s);
  SpectralField df = grad(f);
  for (int j = 0; j < g.n; ++j)
    CHECK(df.sample(0, j) ==
          doctest::Approx(k1 * std::cos(k1 * j * g.spacing())).epsilon(1e-12));
}

TEST_CASE("laplacian of a constant vanishes") {
  Grid g(2, 16, 1.0);
  std::vector<double> s(g.size(), 3.5);
  SpectralField f = SpectralField::from_samples(g, 1, s);
  CHECK(laplacian(f).linf() < 1e-12);
}

TEST_CASE("inverse laplacian inverts the laplacian modulo means") {
  for (int dim : {1, 2}) {
    Grid g(dim, 32, Grid::two_pi());
    SpectralField f = random_band_limited(g, 1, 1, 8, 1.0, 11 + dim);
    SpectralField lhs = inv_laplacian(laplacian(f));
    // f has zero mean by construction of the band
    CHECK(rel(lhs, f) < 1e-10);
  }
}

TEST_CASE("singular multipliers are rejected") {
  Grid g(1, 16, Grid::two_pi());  // xi = k, so xi2 = 1 is hit at |k| = 1
  SpectralField f = random_band_limited(g, 1, 1, 4, 1.0, 5);
  CHECK_THROWS_AS(
      apply_multiplier(f, [](const std::array<double, 3>&, double xi2) {
        return cplx(1.0 / (xi2 - 1.0), 0.0);  // hits a grid wavenumber
      }),
      Error);
}

TEST_CASE("multiplier composition commutes up to rounding") {
  Grid g(2, 32, Grid::two_pi());
  SpectralField f = random_band_limited(g, 1, 1, 9, 1.0, 21);
  Multiplier m1 = [](const std::array<double, 3>& xi, double) {
    return cplx(0.0, xi[0]);
  };
  Multiplier m2 = [](const std::array<double, 3>&, double xi2) {
    return cplx(-xi2, 0.0);
  };
  SpectralField a = apply_multiplier(apply_multiplier(f, m1), m2);
  SpectralField b = apply_multiplier(f, [&](const std::array<double, 3>& xi,
                                            double xi2) {
    return cplx(0.0, xi[0]) * cplx(-xi2, 0.0);
  });
  CHECK(rel(a, b) < 1e-13);
}

TEST_CASE("curl of gradient and divergence of curl vanish") {
  for (int dim : {2, 3}) {
    Grid g(dim, dim == 3 ? 16 : 32, Grid::two_pi());
    SpectralField psi = random_band_limited(g, 1, 1, 5, 1.0, 31 + dim);
    psi = (1.0 / psi.l2()) * psi;
    if (dim == 2) {
      SpectralField c = curl(grad(psi));
      CHECK(c.linf() < 1e-12);
      SpectralField w = curl_of_scalar(psi);
      CHECK(divergence(w).linf() < 1e-12);
    } else {
      SpectralField c = curl(grad(psi));
      CHECK(c.linf() < 1e-12);
      SpectralField v = random_band_limited(g, 3, 1, 4, 1.0, 77);
      v = (1.0 / v.l2()) * v;
      CHECK(divergence(curl(v)).linf() < 1e-12);
    }
  }
}

TEST_CASE("helmholtz split reconstructs and separates") {
  Grid g(2, 32, Grid::two_pi());
  SpectralField u = random_band_limited(g, 2, 1, 8, 1.0, 41);
  SpectralField pot(g, 2), rot(g, 2);
  helmholtz(u, pot, rot);
  CHECK(rel(pot + rot, u) < 1e-12);
  CHECK(divergence(rot).linf() < 1e-11);
  CHECK(curl(pot).linf() < 1e-11);
}

TEST_CASE("dealias leaves band-limited fields unchanged") {
  Grid g(1, 64, Grid::two_pi());
  SpectralField f = random_band_limited(g, 1, 1, 10, 1.0, 51);  // well inside
  CHECK(rel(dealias(f), f) < 1e-15);
}

TEST_CASE("dealias kills the nyquist mode") {
  Grid g(1, 32, Grid::two_pi());
  std::vector<cplx> c(g.size(), cplx(0.0));
  c[g.n / 2] = cplx(1.0, 0.0);  // pure nyquist
  SpectralField f = SpectralField::from_coeffs(g, 1, std::move(c));
  CHECK(dealias(f).l2() == 0.0);
}

TEST_CASE("dealiased product matches the padded-grid convolution") {
  for (int dim : {1, 2}) {
    Grid g(dim, 64, Grid::two_pi());
    // inputs carry energy up to the dealias radius
    SpectralField a =
        dealias(random_band_limited(g, 1, 1, g.n / 3, 1.0, 61 + dim));
    SpectralField b =
        dealias(random_band_limited(g, 1, 2, g.n / 3, 1.0, 62 + dim));
    SpectralField mine = product(a, b);
    SpectralField oracle = dealias(padded_product(a, b));
    CHECK(rel(mine, oracle) < 1e-10);
  }
}

TEST_CASE("heat flow decays a single mode at the analytic rate") {
  Grid g(1, 32, Grid::two_pi());
  std::vector<double> s(g.size());
  for (int j = 0; j < g.n; ++j) s[j] = std::cos(3.0 * j * g.spacing());
  SpectralField f = SpectralField::from_samples(g, 1, s);
  double nu = 0.7, t = 0.3;
  SpectralField ft = heat_flow(f, nu, t);
  double expected = std::exp(-nu * 9.0 * t);
  for (int j = 0; j < g.n; ++j)
    CHECK(ft.sample(0, j) ==
          doctest::Approx(expected * s[j]).epsilon(1e-12));
}

TEST_CASE("sym_grad is symmetric and traces to divergence") {
  Grid g(2, 32, Grid::two_pi());
  SpectralField u = random_band_limited(g, 2, 1, 8, 1.0, 71);
  SpectralField D = sym_grad(u);
  SpectralField divu = divergence(u);
  const std::size_t npts = g.size();
  const auto& sd = D.samples();
  const auto& sv = divu.samples();
  double worst = 0.0;
  for (std::size_t j = 0; j < npts; ++j) {
    worst = std::max(worst, std::abs(sd[1 * npts + j] - sd[2 * npts + j]));
    worst = std::max(
        worst, std::abs(sd[0 * npts + j] + sd[3 * npts + j] - sv[j]));
  }
  CHECK(worst < 1e-11);
}
