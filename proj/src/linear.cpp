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

#include "nsk/linear.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "nsk/initial_data.hpp"
#include "nsk/operators.hpp"
#include "nsk/paley.hpp"

namespace nsk {

void LinearCoeffs::validate() const {
  if (!(a > 0.0)) fail_validation("linear coeffs need a > 0");
  if (!(a + b > 0.0)) fail_validation("linear coeffs need a + b > 0");
  if (!(c > 0.0)) fail_validation("linear coeffs need c > 0");
  if (d < 0.0) fail_validation("linear coeffs need d >= 0");
}

Mat2 Mat2::identity() { return Mat2{{{1.0, 0.0}, {0.0, 1.0}}}; }

Mat2 closed_form_exp(double xi2, double t, const LinearCoeffs& lc) {
  lc.validate();
  if (lc.d != 0.0)
    fail_validation("closed form covers the pressureless system only");
  if (t < 0.0 || xi2 < 0.0)
    fail_validation("closed_form_exp needs t >= 0 and |xi|^2 >= 0");
  const double nu = lc.nu();
  const double disc = nu * nu / 4.0 - lc.c;  // sign selects the regime
  const double nup = std::sqrt(std::abs(disc));
  const double w = xi2 * t;
  // dh1 = e^{-nu w/2} h1, dh2 = e^{-nu w/2} h2; the hyperbolic branch folds
  // the damping into the exponentials so cosh never overflows.
  double dh1, dh2;
  if (disc < 0.0) {          // trigonometric
    const double damp = std::exp(-0.5 * nu * w);
    dh1 = damp * std::cos(nup * w);
    dh2 = damp * (nup > 0.0 ? std::sin(nup * w) / nup : w);
  } else if (disc == 0.0) {  // resonant
    const double damp = std::exp(-0.5 * nu * w);
    dh1 = damp;
    dh2 = damp * w;
  } else {                   // hyperbolic: nup < nu/2, both rates decay
    const double ep = std::exp((nup - 0.5 * nu) * w);
    const double em = std::exp(-(nup + 0.5 * nu) * w);
    dh1 = 0.5 * (ep + em);
    dh2 = (ep - em) / (2.0 * nup);
  }
  Mat2 out;
  out.m[0][0] = dh1 + 0.5 * nu * dh2;
  out.m[0][1] = dh2;
  out.m[1][0] = -lc.c * dh2;
  out.m[1][1] = dh1 - 0.5 * nu * dh2;
  return out;
}

namespace {

// Conjugate the (lap q, div u) closed form into (q, div u) variables:
// S = diag(-|xi|^2, 1), P_qv = S^{-1} e^{-tA} S.
Mat2 qv_from_cv(const Mat2& e, double xi2) {
  Mat2 out = e;
  if (xi2 > 0.0) {
    out.m[0][1] = -e.m[0][1] / xi2;
    out.m[1][0] = -e.m[1][0] * xi2;
  } else {
    // xi = 0: q' = -v, v' = 0
    out = Mat2::identity();
  }
  return out;
}

Mat2 dense_qv_propagator(double xi2, double t, const LinearCoeffs& lc) {
  // d/dt (q, v) = -M (q, v), M = [[0, 1], [-(c xi^4 + d xi^2), nu xi^2]]
  Eigen::Matrix2d M;
  M << 0.0, 1.0, -(lc.c * xi2 * xi2 + lc.d * xi2), lc.nu() * xi2;
  Eigen::Matrix2d E = (-t * M).exp();
  Mat2 out;
  out.m[0][0] = E(0, 0);
  out.m[0][1] = E(0, 1);
  out.m[1][0] = E(1, 0);
  out.m[1][1] = E(1, 1);
  return out;
}

}  // namespace

Mat2 mode_propagator(double xi2, double t, const LinearCoeffs& lc) {
  lc.validate();
  if (t < 0.0) fail_validation("mode_propagator needs t >= 0");
  if (lc.d == 0.0) return qv_from_cv(closed_form_exp(xi2, t, lc), xi2);
  return dense_qv_propagator(xi2, t, lc);
}

FluidState apply_semigroup(const FluidState& s0, double t,
                           const LinearCoeffs& lc) {
  lc.validate();
  if (t < 0.0) fail_validation("apply_semigroup needs t >= 0");
  const Grid& g = s0.grid();
  const std::size_t npts = g.size();
  const auto& cq = s0.q.coeffs();
  const auto& cu = s0.u.coeffs();

  std::vector<cplx> q_out(npts);
  std::vector<cplx> u_out(static_cast<std::size_t>(g.dim) * npts);
  for (std::size_t j = 0; j < npts; ++j) {
    const double xi2 = g.xi_squared(j);
    auto k = g.k_vector(j);
    const double f = g.fundamental();
    cplx xi[3] = {cplx(f * k[0]), cplx(f * k[1]), cplx(f * k[2])};

    // potential/rotational split of u^
    cplx v(0.0);  // div u^ = i xi . u^
    for (int d = 0; d < g.dim; ++d)
      v += cplx(0.0, 1.0) * xi[d] * cu[d * npts + j];

    Mat2 P = mode_propagator(xi2, t, lc);
    cplx q_new = P.m[0][0] * cq[j] + P.m[0][1] * v;
    cplx v_new = P.m[1][0] * cq[j] + P.m[1][1] * v;

    const double heat = std::exp(-lc.a * xi2 * t);
    q_out[j] = q_new;
    for (int d = 0; d < g.dim; ++d) {
      cplx upot = xi2 > 0.0
                      ? cplx(0.0, -1.0) * xi[d] / xi2 * v
                      : cplx(0.0);
      cplx urot = cu[d * npts + j] - upot;
      cplx upot_new = xi2 > 0.0
                          ? cplx(0.0, -1.0) * xi[d] / xi2 * v_new
                          : cplx(0.0);
      u_out[d * npts + j] = upot_new + heat * urot;
    }
  }
  FluidState out;
  out.q = SpectralField::from_coeffs(g, 1, std::move(q_out));
  out.u = SpectralField::from_coeffs(g, g.dim, std::move(u_out));
  out.time = s0.time + t;
  return out;
}

double fit_log_slope_last_half(const std::vector<double>& t,
                               const std::vector<double>& values) {
  if (t.size() != values.size() || t.size() < 4)
    fail_validation("slope fit needs at least 4 samples");
  std::size_t start = t.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = start; i < t.size(); ++i) {
    if (!(values[i] > 0.0)) continue;
    double x = t[i], y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) fail_numeric("decay fit: too few positive samples");
  double denom = m * sxx - sx * sx;
  if (denom == 0.0) fail_numeric("decay fit: degenerate time grid");
  return (m * sxy - sx * sy) / denom;
}

DecayReport verify_block_decay(const Grid& g, int l, const LinearCoeffs& lc,
                               const std::vector<double>& t_grid,
                               std::uint64_t seed) {
  lc.validate();
  if (lc.d != 0.0) fail_validation("block decay law covers d = 0 only");
  if (t_grid.size() < 4)
    fail_validation("block decay fit needs at least 4 time samples");
  paley::BlockRange range = paley::block_range(g);
  if (!range.contains(l)) fail_validation("block index outside range");

  // unit-norm probe supported in block l
  FluidState s0;
  s0.q = dyadic_block(random_band_limited(g, 1, 0, g.n / 2 - 1, 1.0, seed), l);
  s0.u = dyadic_block(
      random_band_limited(g, g.dim, 0, g.n / 2 - 1, 1.0, seed + 1), l);
  double norm0 = stack(grad(s0.q), s0.u).l2();
  if (norm0 == 0.0) fail_numeric("empty block probe");
  s0.q = (1.0 / norm0) * s0.q;
  s0.u = (1.0 / norm0) * s0.u;

  std::vector<double> e(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    FluidState st = apply_semigroup(s0, t_grid[i], lc);
    e[i] = stack(grad(st.q), st.u).l2();
  }
  DecayReport rep;
  rep.block = l;
  rep.measured_rate = -fit_log_slope_last_half(t_grid, e);
  double nu = lc.nu();
  rep.predicted_rate =
      std::min(1.0, 4.0 * lc.c / (nu * nu)) * nu * std::ldexp(1.0, 2 * l);
  rep.c_fit = rep.measured_rate / rep.predicted_rate;
  return rep;
}

double dyadic_energy_alpha_max(const LinearCoeffs& lc) {
  return 0.5 * std::sqrt(lc.c);
}

double dyadic_energy(const FluidState& s, int l, double alpha,
                     const LinearCoeffs& lc) {
  lc.validate();
  if (!(alpha > 0.0) || alpha > dyadic_energy_alpha_max(lc))
    fail_validation(
        "alpha too large for the dyadic energy norm equivalence "
        "(requires 0 < alpha <= sqrt(c)/2)");
  SpectralField ql = dyadic_block(s.q, l);
  SpectralField ul = dyadic_block(s.u, l);
  SpectralField gql = grad(ql);
  double uu = ul.l2();
  double qq = gql.l2();
  // int grad q_l . u_l
  const auto& sg = gql.samples();
  const auto& su = ul.samples();
  double cross = 0.0;
  for (std::size_t j = 0; j < sg.size(); ++j) cross += sg[j] * su[j];
  cross *= s.grid().cell_volume();

  double k2 = uu * uu + lc.c * qq * qq + 2.0 * alpha * cross;
  if (k2 < 0.0) fail_numeric("dyadic energy form lost positivity");
  double e = uu * uu + lc.c * qq * qq;
  if (e > 0.0) {
    // Cauchy-Schwarz gives |2 alpha cross| <= (alpha/sqrt(c)) e, so at
    // alpha <= sqrt(c)/2 the guaranteed sandwich is e in [k^2/2, 2 k^2];
    // the sharper 3/2 upper constant needs alpha <= sqrt(c)/3.
    double upper = alpha <= std::sqrt(lc.c) / 3.0 ? 1.5 : 2.0;
    if (e < 0.5 * k2 * (1.0 - 1e-9) || e > upper * k2 * (1.0 + 1e-9))
      fail_numeric("dyadic energy equivalence sandwich violated");
  }
  return std::sqrt(k2);
}

DuhamelReport duhamel_linf_split(const FluidState& s0, const LinearCoeffs& lc,
                                 double T, int time_samples, int quad_nodes) {
  lc.validate();
  if (lc.d != 0.0) fail_validation("duhamel split covers d = 0 only");
  if (!(T > 0.0)) fail_validation("duhamel split needs T > 0");
  if (time_samples < 2 || quad_nodes < 8 || quad_nodes % 2 != 0)
    fail_validation("duhamel split needs >= 2 samples, even quad_nodes >= 8");

  const double nu = lc.nu();
  const double heat_coeff = lc.c / nu;
  DuhamelReport rep;
  rep.q0_linf = s0.q.linf();
  rep.data_norm = besov_norm(stack(grad(s0.q), s0.u),
                             0.5 * s0.grid().dim - 1.0, 2.0, 2.0);

  // dc/ds at quadrature nodes; c = lap^{-1} div u
  auto dc_ds = [&](const FluidState& st) {
    return axpy(nu, divergence(st.u), lc.c * laplacian(st.q));
  };

  for (int i = 1; i <= time_samples; ++i) {
    double t = T * i / time_samples;
    FluidState direct = apply_semigroup(s0, t, lc);

    // heat part and its max principle
    SpectralField heat_q = heat_flow(s0.q, heat_coeff, t);
    double sup_ratio =
        rep.q0_linf > 0.0 ? heat_q.linf() / rep.q0_linf : 0.0;
    rep.heat_sup_ratio = std::max(rep.heat_sup_ratio, sup_ratio);

    // composite Simpson for the Duhamel correction
    SpectralField correction(s0.grid(), 1);
    double h = t / quad_nodes;
    for (int m = 0; m <= quad_nodes; ++m) {
      double sshift = h * m;
      double weight = (m == 0 || m == quad_nodes) ? 1.0 : (m % 2 ? 4.0 : 2.0);
      FluidState at_s = apply_semigroup(s0, sshift, lc);
      SpectralField term =
          heat_flow(dc_ds(at_s), heat_coeff, std::max(0.0, t - sshift));
      correction = axpy(weight * h / 3.0, term, correction);
    }
    SpectralField q_split = axpy(-1.0 / nu, correction, heat_q);
    double rel = (q_split - direct.q).l2() /
                 std::max(direct.q.l2(), 1e-300);
    rep.split_vs_direct_rel = std::max(rep.split_vs_direct_rel, rel);

    rep.q_linf_max = std::max(rep.q_linf_max, direct.q.linf());
    double grad_sup = stack(grad(direct.q), direct.u).linf();
    rep.sqrt_t_sup = std::max(rep.sqrt_t_sup, std::sqrt(t) * grad_sup);
  }
  double excess = std::max(0.0, rep.q_linf_max - rep.q0_linf);
  rep.c_fit_linf = rep.data_norm > 0.0 ? excess / rep.data_norm : 0.0;
  rep.c_fit_sqrt_t = rep.data_norm > 0.0 ? rep.sqrt_t_sup / rep.data_norm : 0.0;
  return rep;
}

CharacterizationReport semigroup_besov_characterization(
    const FluidState& s0, double s, double p, double r, const LinearCoeffs& lc,
    double t_min, double t_max, int t_count) {
  lc.validate();
  if (lc.d != 0.0)
    fail_validation("besov characterization covers d = 0 only");
  if (r < 1.0) fail_validation("characterization needs r >= 1");
  if (!(s > 0.0)) fail_validation("characterization needs s > 0");
  if (!(t_min > 0.0 && t_max > t_min && t_count >= 4))
    fail_validation("characterization needs a valid log time grid");

  CharacterizationReport rep;
  SpectralField v0 = stack(grad(s0.q), s0.u);
  rep.rhs = besov_norm(v0, -2.0 * s, p, r);

  std::vector<double> logt(t_count), vals(t_count);
  for (int i = 0; i < t_count; ++i) {
    double lt = std::log(t_min) +
                (std::log(t_max) - std::log(t_min)) * i / (t_count - 1);
    double t = std::exp(lt);
    FluidState st = apply_semigroup(s0, t, lc);
    logt[i] = lt;
    vals[i] = std::pow(t, s) * stack(grad(st.q), st.u).lp(p);
  }
  if (std::isinf(r)) {
    rep.lhs = *std::max_element(vals.begin(), vals.end());
  } else {
    double acc = 0.0;  // trapezoid in log t  ==  integral dt/t
    for (int i = 0; i + 1 < t_count; ++i)
      acc += 0.5 * (logt[i + 1] - logt[i]) *
             (std::pow(vals[i], r) + std::pow(vals[i + 1], r));
    rep.lhs = std::pow(acc, 1.0 / r);
  }
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

}  // namespace nsk
