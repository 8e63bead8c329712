#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "nsk/initial_data.hpp"
#include "nsk/operators.hpp"
#include "nsk/paley.hpp"

using namespace nsk;

namespace {
SpectralField single_mode(const Grid& g, int k, double amplitude = 1.0) {
  std::vector<double> s(g.size());
  for (int j = 0; j < g.n; ++j)
    s[j] = amplitude * std::cos(k * g.fundamental() * j * g.spacing());
  return SpectralField::from_samples(g, 1, s);
}
}  // namespace

TEST_CASE("cutoff supports and plateau") {
  CHECK(paley::chi(0.5) == 1.0);
  CHECK(paley::chi(0.75) == 1.0);
  CHECK(paley::chi(1.0) == doctest::Approx(0.0));
  CHECK(paley::chi(4.0 / 3.0) == 0.0);
  CHECK(paley::phi(0.74) == 0.0);
  CHECK(paley::phi(1.0) == doctest::Approx(1.0));
  CHECK(paley::phi(1.4) == doctest::Approx(1.0));
  CHECK(paley::phi(8.0 / 3.0) == doctest::Approx(0.0));
  CHECK(paley::phi(3.0) == 0.0);
}

TEST_CASE("partition of unity on the certified band") {
  Grid g(1, 256, Grid::two_pi());
  paley::BlockRange range = paley::block_range(g);
  paley::Band band = paley::certified_band(g);
  for (int k = 1; k <= g.n / 2 - 1; ++k) {
    double xi = k * g.fundamental();
    if (xi < band.lo || xi > band.hi) continue;
    double sum = 0.0;
    for (int l = range.jmin; l <= range.jmax; ++l)
      sum += paley::phi(xi / std::ldexp(1.0, l));
    CHECK(std::abs(sum - 1.0) <= 1e-10);
  }
  // nonhomogeneous variant: chi + sum_{l >= 0} phi = 1 everywhere below band.hi
  for (int k = 1; k <= g.n / 2 - 1; ++k) {
    double xi = k * g.fundamental();
    if (xi > band.hi) continue;
    double sum = paley::chi(xi);
    for (int l = 0; l <= range.jmax; ++l)
      sum += paley::phi(xi / std::ldexp(1.0, l));
    CHECK(std::abs(sum - 1.0) <= 1e-10);
  }
}

TEST_CASE("single mode at the block center is returned unchanged") {
  Grid g(1, 128, Grid::two_pi());
  const int l = 3;
  SpectralField f = single_mode(g, 1 << l);
  SpectralField bl = dyadic_block(f, l);
  CHECK((bl - f).linf() < 1e-12);
  // disjoint support three blocks away (l=1 vs mode at 2^4); the residue is
  // the sampled cosine's own rounding, not mask leakage
  SpectralField g4 = single_mode(g, 1 << 4);
  CHECK(dyadic_block(g4, 1).l2() <= 1e-12);
}

TEST_CASE("block index outside the range is rejected") {
  Grid g(1, 64, Grid::two_pi());
  SpectralField f = single_mode(g, 4);
  paley::BlockRange r = paley::block_range(g);
  CHECK_THROWS_AS(dyadic_block(f, r.jmax + 1), Error);
  CHECK_THROWS_AS(dyadic_block(f, r.jmin - 1), Error);
}

TEST_CASE("reconstruction from blocks on band-limited fields") {
  Grid g(1, 256, Grid::two_pi());
  paley::Band band = paley::certified_band(g);
  // field supported strictly inside the certified band
  int kmin = static_cast<int>(std::ceil(band.lo / g.fundamental())) + 1;
  int kmax = static_cast<int>(std::floor(band.hi / g.fundamental())) - 1;
  SpectralField f = random_band_limited(g, 1, kmin, kmax, 1.0, 17);
  paley::BlockRange range = paley::block_range(g);
  SpectralField sum(g, 1);
  for (int l = range.jmin; l <= range.jmax; ++l)
    sum = sum + dyadic_block(f, l);
  CHECK((sum - f).l2() / f.l2() <= 1e-8);
}

TEST_CASE("block orthogonality for separated indices") {
  Grid g(1, 256, Grid::two_pi());
  SpectralField f = random_band_limited(g, 1, 1, 100, 1.0, 19);
  paley::BlockRange range = paley::block_range(g);
  for (int l = range.jmin; l <= range.jmax; ++l)
    for (int m = l + 2; m <= range.jmax; ++m)
      CHECK(dyadic_block(dyadic_block(f, l), m).l2() <= 1e-12);
}

TEST_CASE("besov norm basics") {
  Grid g(1, 128, Grid::two_pi());
  CHECK(besov_norm(SpectralField(g, 1), 1.0, 2.0, INFINITY) == 0.0);

  // unit-L2 mode at |xi| = 2^l: B^s_{2,inf} is 2^{ls} up to partition overlap
  const int l = 3;
  SpectralField f = single_mode(g, 1 << l);
  f = (1.0 / f.l2()) * f;
  for (double s : {-1.0, 0.5, 2.0}) {
    double nrm = besov_norm(f, s, 2.0, INFINITY);
    double ideal = std::pow(2.0, l * s);
    CHECK(nrm <= 2.0 * ideal);
    CHECK(nrm >= 0.5 * ideal);
  }

  // homogeneity
  SpectralField h = random_band_limited(g, 1, 2, 40, 1.0, 23);
  double base = besov_norm(h, 0.7, 2.0, 1.0);
  double scaled = besov_norm(3.25 * h, 0.7, 2.0, 1.0);
  CHECK(scaled == doctest::Approx(3.25 * base).epsilon(1e-12));
}

TEST_CASE("besov norm rejects bad indices and empty ranges") {
  Grid g(1, 128, Grid::two_pi());
  SpectralField f = single_mode(g, 4);
  CHECK_THROWS_AS(besov_norm(f, 1.0, 0.5, 2.0), Error);
  CHECK_THROWS_AS(paley::block_range(Grid(1, 8, 1e-3)), Error);
}

TEST_CASE("hybrid besov degenerates to the plain norm") {
  Grid g(1, 128, Grid::two_pi());
  SpectralField f = random_band_limited(g, 1, 2, 40, 1.0, 29);
  paley::BlockRange range = paley::block_range(g);
  BesovSpec spec = BesovSpec::make_hybrid(0.8, 0.8, range.jmin + 1, 2.0, 1.0);
  double plain = besov_norm(f, 0.8, 2.0, 1.0);
  CHECK(hybrid_besov_norm(f, spec) == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("hybrid besov splits at l0") {
  Grid g(1, 128, Grid::two_pi());
  paley::BlockRange range = paley::block_range(g);
  const int l0 = range.jmin + 1;

  // field supported above l0: low-frequency sum is zero
  SpectralField hi = single_mode(g, 1 << (l0 + 2));
  BesovSpec spec = BesovSpec::make_hybrid(-2.0, 1.5, l0, 2.0, 1.0);
  double whole = hybrid_besov_norm(hi, spec);
  double high_only = 0.0;
  for (int l = l0 + 1; l <= range.jmax; ++l)
    high_only += std::pow(2.0, 1.5 * l) * block_lp_norm(hi, l, 2.0);
  CHECK(whole == doctest::Approx(high_only).epsilon(1e-12));

  // random field: value equals the sum of the two restricted aggregations
  SpectralField f = random_band_limited(g, 1, 2, 40, 1.0, 31);
  double low = 0.0, high = 0.0;
  for (int l = range.jmin; l <= l0; ++l)
    low += std::pow(2.0, -2.0 * l) * block_lp_norm(f, l, 2.0);
  for (int l = l0 + 1; l <= range.jmax; ++l)
    high += std::pow(2.0, 1.5 * l) * block_lp_norm(f, l, 2.0);
  CHECK(hybrid_besov_norm(f, spec) ==
        doctest::Approx(low + high).epsilon(1e-12));

  BesovSpec bad = BesovSpec::make_hybrid(-2.0, 1.5, range.jmax + 3, 2.0, 1.0);
  CHECK_THROWS_AS(hybrid_besov_norm(f, bad), Error);
}

TEST_CASE("chemin-lerner norm limits and orderings") {
  Grid g(1, 128, Grid::two_pi());
  SpectralField f = random_band_limited(g, 1, 2, 40, 1.0, 37);
  std::vector<double> times = {0.0, 0.1, 0.25, 0.4};
  std::vector<const SpectralField*> fields(times.size(), &f);

  // time-constant field, rho = inf: equals the plain besov norm
  BesovSpec b21 = BesovSpec::plain(0.5, 2.0, 1.0);
  CHECK(chemin_lerner_norm(times, fields, INFINITY, b21) ==
        doctest::Approx(besov_norm(f, b21)).epsilon(1e-12));

  // r = rho = 2: equals the L2-in-time norm of the B^s_{2,2} values
  std::vector<SpectralField> decayed;
  for (double t : times) decayed.push_back(heat_flow(f, 1.0, t));
  std::vector<const SpectralField*> ptrs;
  for (auto& d : decayed) ptrs.push_back(&d);
  BesovSpec b22 = BesovSpec::plain(0.5, 2.0, 2.0);
  double tilde = chemin_lerner_norm(times, ptrs, 2.0, b22);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    double a = besov_norm(decayed[i], b22), b = besov_norm(decayed[i + 1], b22);
    acc += 0.5 * (times[i + 1] - times[i]) * (a * a + b * b);
  }
  CHECK(tilde == doctest::Approx(std::sqrt(acc)).epsilon(1e-11));

  // Minkowski: r = 1 <= rho = inf implies tilde >= plain
  double tilde_inf = chemin_lerner_norm(times, ptrs, INFINITY, b21);
  double plain_inf = 0.0;
  for (const auto& d : decayed)
    plain_inf = std::max(plain_inf, besov_norm(d, b21));
  CHECK(tilde_inf >= plain_inf * (1.0 - 1e-12));

  std::vector<double> bad_times = {0.0, 0.2, 0.1};
  std::vector<const SpectralField*> bad_fields(3, &f);
  CHECK_THROWS_AS(chemin_lerner_norm(bad_times, bad_fields, 2.0, b21), Error);
}

TEST_CASE("derivative shift factor is finite and recorded") {
  Grid g(1, 256, Grid::two_pi());
  SpectralField f = random_band_limited(g, 1, 4, 60, 1.0, 41);
  double s = 1.2;
  double num = besov_norm(grad(f), s - 1.0, 2.0, 2.0);
  double den = besov_norm(f, s, 2.0, 2.0);
  double factor = num / den;
  CHECK(std::isfinite(factor));
  CHECK(factor > 0.1);
  CHECK(factor < 10.0);
  MESSAGE("derivative shift factor: ", factor);
}

TEST_CASE("interpolation inequality between regularity indices") {
  Grid g(1, 256, Grid::two_pi());
  for (std::uint64_t seed : {43u, 44u, 45u}) {
    SpectralField f = random_band_limited(g, 1, 2, 60, 1.0, seed);
    double s = 0.4, st = 2.0;
    double ns = besov_norm(f, s, 2.0, 2.0);
    double nst = besov_norm(f, st, 2.0, 2.0);
    for (double theta : {0.25, 0.5, 0.75}) {
      double mid = besov_norm(f, theta * s + (1.0 - theta) * st, 2.0, 2.0);
      CHECK(mid <= std::pow(ns, theta) * std::pow(nst, 1.0 - theta) *
                       (1.0 + 1e-12));
    }
  }
}

TEST_CASE("block scaling flatness for the homogeneous profile") {
  // sigma = N/2: the weight 2^{j*0} makes the block norms themselves flat
  Grid g(1, 1024, Grid::two_pi());
  ScalingReport rep = block_scaling_check(0.5, g);
  CHECK(rep.max_over_min <= 1.2);

  Grid g2(2, 256, Grid::two_pi());
  ScalingReport rep2 = block_scaling_check(1.0, g2);
  CHECK(rep2.max_over_min <= 1.2);
}

TEST_CASE("norm series csv format") {
  NormSeries ns;
  ns.append(0.0);
  ns.record("a", 1.5);
  ns.append(0.5);
  ns.record("a", 2.5);
  ns.write_csv("test_norms.csv");
  std::FILE* fp = std::fopen("test_norms.csv", "r");
  REQUIRE(fp != nullptr);
  char line[128];
  REQUIRE(std::fgets(line, sizeof line, fp));
  CHECK(std::string(line) == "time,spec,value\n");
  REQUIRE(std::fgets(line, sizeof line, fp));
  CHECK(std::string(line).find("0,a,1.5") == 0);
  std::fclose(fp);
  std::remove("test_norms.csv");
  CHECK_THROWS_AS(ns.append(0.2), Error);
}
