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

#include "nsk/initial_data.hpp"

#include <cmath>
#include <random>

#include "nsk/operators.hpp"
#include "nsk/paley.hpp"

namespace nsk {

namespace {

// Distance to the cell center (torus metric), per flat index.
double torus_r2(const Grid& g, std::size_t flat) {
  auto x = g.point(flat);
  double r2 = 0.0;
  for (int d = 0; d < g.dim; ++d) {
    double w = std::fmod(x[d] + 0.5 * g.length, g.length) - 0.5 * g.length;
    r2 += w * w;
  }
  return r2;
}

double smooth01(double t) {  // C^inf step, 0 at t<=0, 1 at t>=1
  auto f = [](double u) { return u <= 0.0 ? 0.0 : std::exp(-1.0 / u); };
  double a = f(t), b = f(1.0 - t);
  return a / (a + b);
}

}  // namespace

SpectralField homogeneous_profile(double sigma, const Grid& g) {
  if (!(sigma > 0.0 && sigma < g.dim))
    fail_validation("homogeneous profile needs sigma in (0, dim)");
  // Periodization of |x|^{-sigma} mollified by a half-cell Gaussian, built
  // from its exact Fourier-series coefficients |xi|^{sigma-N} e^{-|xi|^2 tau}
  // (Poisson summation).  Sampling the profile in physical space instead
  // would alias O((k/n)^{N-sigma}) of the heavy spectral tail into the mid
  // band and break the flat dyadic law there.
  const std::size_t npts = g.size();
  const double tau = 0.125 * g.spacing() * g.spacing();  // (h/2)^2 / 2
  std::vector<cplx> c(npts, cplx(0.0));
  for (std::size_t j = 0; j < npts; ++j) {
    double xi2 = g.xi_squared(j);
    if (xi2 == 0.0) continue;
    c[j] = cplx(std::pow(xi2, 0.5 * (sigma - g.dim)) * std::exp(-xi2 * tau),
                0.0);
  }
  // unit-mean normalization of the synthesis constant
  double scale = static_cast<double>(npts) / g.volume();
  for (auto& v : c) v *= scale;
  return SpectralField::from_coeffs(g, 1, std::move(c));
}

TruncatedProfile truncated_profile(double epsilon, int l0, const Grid& g,
                                   double r) {
  if (!(epsilon > 0.0 && epsilon <= 0.1))
    fail_validation("truncated profile needs eps in (0, 1/10]");
  paley::BlockRange range = paley::block_range(g);
  if (!range.contains(l0))
    fail_validation("truncated profile l0 outside the block range");
  SpectralField base = homogeneous_profile(1.0 - epsilon, g);
  // keep |xi| >= 2^{l0}
  const std::size_t npts = g.size();
  std::vector<cplx> c(base.coeffs());
  const double cut2 = std::ldexp(1.0, 2 * l0);
  for (std::size_t j = 0; j < npts; ++j)
    if (g.xi_squared(j) < cut2) c[j] = cplx(0.0);
  TruncatedProfile out;
  out.u0 = SpectralField::from_coeffs(g, 1, std::move(c));
  double scrit = 0.5 * g.dim - 1.0;
  out.norm_besov_inf = besov_norm(out.u0, scrit, 2.0, INFINITY);
  out.norm_besov_r = besov_norm(out.u0, scrit, 2.0, r);
  return out;
}

SpectralField scaled_profile(const SpectralField& phi, int lambda_scale) {
  const Grid& g = phi.grid();
  if (lambda_scale < 1 || (lambda_scale & (lambda_scale - 1)) != 0)
    fail_validation("lambda_scale must be a power of two");
  if (lambda_scale == 1) return phi;
  if (lambda_scale >= g.n)
    fail_validation("lambda_scale too large for the grid");
  const std::size_t npts = g.size();
  const auto& in = phi.samples();
  std::vector<double> out(static_cast<std::size_t>(phi.rank()) * npts, 0.0);
  const double half = 0.5 * g.length / lambda_scale;
  for (std::size_t j = 0; j < npts; ++j) {
    // single copy: x must lie within the shrunk cell around the center
    auto x = g.point(j);
    bool inside = true;
    std::size_t src = 0, mult = 1;
    for (int d = 0; d < g.dim; ++d) {
      double w = std::fmod(x[d] + 0.5 * g.length, g.length) - 0.5 * g.length;
      if (std::abs(w) > half) {
        inside = false;
        break;
      }
      // scaled coordinate lambda*x mod L, back to an index
      double xs = std::fmod(lambda_scale * x[d], g.length);
      int is = static_cast<int>(std::lround(xs / g.spacing())) % g.n;
      if (is < 0) is += g.n;
      src += static_cast<std::size_t>(is) * mult;
      mult *= g.n;
    }
    if (!inside) continue;
    for (int c = 0; c < phi.rank(); ++c)
      out[c * npts + j] = in[c * npts + src];
  }
  return SpectralField::from_samples(g, phi.rank(), std::move(out));
}

SpectralField gaussian_bump(const Grid& g, double amplitude,
                            double width_frac) {
  SpectralField b = centered_bump(g, amplitude, width_frac);
  std::vector<double> out(b.samples());
  for (double& v : out) v += 1.0;
  SpectralField rho = SpectralField::from_samples(g, 1, std::move(out));
  if (rho.min_value() < vacuum_floor())
    fail_validation("gaussian bump amplitude drives the density into vacuum");
  return rho;
}

SpectralField centered_bump(const Grid& g, double amplitude,
                            double width_frac) {
  // Sum over the 3^dim nearest periodic images: the wrapped-distance
  // Gaussian alone has a derivative kink at the cell boundary which leaves
  // O(exp(-(L/2w)^2/2)) spectral tails; the image sum is smooth.
  const std::size_t npts = g.size();
  const double w = width_frac * g.length;
  std::vector<double> out(npts, 0.0);
  for (std::size_t j = 0; j < npts; ++j) {
    auto x = g.point(j);
    double wrapped[3] = {0.0, 0.0, 0.0};
    for (int d = 0; d < g.dim; ++d)
      wrapped[d] =
          std::fmod(x[d] + 0.5 * g.length, g.length) - 0.5 * g.length;
    double acc = 0.0;
    for (int mx = -1; mx <= 1; ++mx) {
      for (int my = (g.dim >= 2 ? -1 : 0); my <= (g.dim >= 2 ? 1 : 0); ++my) {
        for (int mz = (g.dim == 3 ? -1 : 0); mz <= (g.dim == 3 ? 1 : 0);
             ++mz) {
          const int m[3] = {mx, my, mz};
          double r2 = 0.0;
          for (int d = 0; d < g.dim; ++d) {
            double v = wrapped[d] + m[d] * g.length;
            r2 += v * v;
          }
          acc += std::exp(-r2 / (2.0 * w * w));
        }
      }
    }
    out[j] = amplitude * acc;
  }
  return SpectralField::from_samples(g, 1, std::move(out));
}

SpectralField density_jump(const Grid& g, double location_frac, double height,
                           double smoothing_cells) {
  if (smoothing_cells < 1.0)
    fail_validation("density jump must be smoothed over >= 1 cell");
  if (1.0 + std::min(0.0, height) < vacuum_floor())
    fail_validation("density jump height reaches vacuum");
  // plateau of width L/2 whose rising edge sits at location_frac * L;
  // built from the circular distance to the plateau center so the profile
  // is periodic (the distance kink at the antipode is exponentially deep
  // in the tanh tail)
  const std::size_t npts = g.size();
  const double delta = smoothing_cells * g.spacing();
  const double center = std::fmod((location_frac + 0.25) * g.length, g.length);
  std::vector<double> out(npts);
  for (std::size_t j = 0; j < npts; ++j) {
    double x = g.point(j)[0];
    double d = std::abs(
        std::fmod(x - center + 1.5 * g.length, g.length) - 0.5 * g.length);
    double s = 0.5 * (1.0 - std::tanh((d - 0.25 * g.length) / delta));
    out[j] = 1.0 + height * s;
  }
  return SpectralField::from_samples(g, 1, std::move(out));
}

FluidState quasi_solution_data(const SpectralField& rho1_0,
                               const SpectralField& h2_0,
                               const SpectralField& u2_0, double mu) {
  if (rho1_0.min_value() < vacuum_floor())
    fail_validation("quasi-solution background density reaches vacuum");
  SpectralField ln_rho1 =
      pointwise(rho1_0, [](double v) { return std::log(v); });
  FluidState s;
  s.q = ln_rho1 + h2_0;
  s.u = axpy(-mu, grad(ln_rho1), u2_0);
  s.time = 0.0;
  return s;
}

void split_quasi_solution_data(const FluidState& s, const SpectralField& rho1_0,
                               double mu, SpectralField* h2_0,
                               SpectralField* u2_0) {
  SpectralField ln_rho1 =
      pointwise(rho1_0, [](double v) { return std::log(v); });
  if (h2_0) *h2_0 = s.q - ln_rho1;
  if (u2_0) *u2_0 = axpy(mu, grad(ln_rho1), s.u);
}

SpectralField random_band_limited(const Grid& g, int rank, int kmin, int kmax,
                                  double amplitude, std::uint64_t seed) {
  if (kmax < kmin || kmin < 0 || kmax > g.n / 2 - 1)
    fail_validation("random band [kmin, kmax] not representable on the grid");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t npts = g.size();
  std::vector<cplx> c(static_cast<std::size_t>(rank) * npts, cplx(0.0));
  for (int comp = 0; comp < rank; ++comp) {
    for (std::size_t j = 0; j < npts; ++j) {
      auto k = g.k_vector(j);
      double kk = std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1] +
                            double(k[2]) * k[2]);
      if (kk < kmin - 0.5 || kk > kmax + 0.5) continue;
      c[comp * npts + j] = cplx(gauss(rng), gauss(rng));
    }
  }
  // Hermitian-symmetrize by going through sample space (take real part).
  SpectralField raw = SpectralField::from_coeffs(g, rank, std::move(c));
  SpectralField real = SpectralField::from_samples(g, rank, raw.samples());
  double n = real.l2();
  if (n == 0.0) return real;
  return (amplitude / n) * real;
}

SpectralField random_positive_density(const Grid& g, double amplitude,
                                      std::uint64_t seed) {
  SpectralField pert =
      random_band_limited(g, 1, 1, std::max(2, g.n / 16), amplitude, seed);
  double m = pert.linf();
  double cap = 0.5;  // keep rho within [0.5, 1.5] regardless of amplitude
  SpectralField scaled = (m > 0.0 ? std::min(1.0, cap / m) : 1.0) * pert;
  std::vector<double> out(scaled.samples());
  for (double& v : out) v += 1.0;
  return SpectralField::from_samples(g, 1, std::move(out));
}

}  // namespace nsk
