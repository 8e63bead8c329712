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

#include "nsk/operators.hpp"

#include <cmath>

namespace nsk {

namespace {

std::array<double, 3> xi_of(const Grid& g, std::size_t flat) {
  auto k = g.k_vector(flat);
  double f = g.fundamental();
  return {f * k[0], f * k[1], f * k[2]};
}

// True when the signed mode index along axis d is the unpaired Nyquist line.
bool on_nyquist(const Grid& g, std::size_t flat, int axis) {
  return g.k_vector(flat)[axis] == -g.n / 2;
}

}  // namespace

SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m) {
  const Grid& g = f.grid();
  const std::size_t npts = g.size();
  std::vector<cplx> out(f.coeffs());
  std::vector<cplx> factors(npts);
  for (std::size_t j = 0; j < npts; ++j) {
    auto xi = xi_of(g, j);
    cplx v = m(xi, xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail_validation("multiplier is singular at a grid wavenumber");
    factors[j] = v;
  }
  for (int c = 0; c < f.rank(); ++c)
    for (std::size_t j = 0; j < npts; ++j) out[c * npts + j] *= factors[j];
  return SpectralField::from_coeffs(g, f.rank(), std::move(out));
}

SpectralField grad(const SpectralField& scalar) {
  if (scalar.rank() != 1) fail_validation("grad expects a scalar field");
  const Grid& g = scalar.grid();
  const std::size_t npts = g.size();
  const auto& in = scalar.coeffs();
  std::vector<cplx> out(static_cast<std::size_t>(g.dim) * npts);
  for (int d = 0; d < g.dim; ++d) {
    for (std::size_t j = 0; j < npts; ++j) {
      double xi_d = g.fundamental() * g.k_vector(j)[d];
      cplx v = in[j] * cplx(0.0, xi_d);
      out[d * npts + j] = on_nyquist(g, j, d) ? cplx(0.0) : v;
    }
  }
  return SpectralField::from_coeffs(g, g.dim, std::move(out));
}

SpectralField divergence(const SpectralField& vec) {
  const Grid& g = vec.grid();
  if (vec.rank() != g.dim) fail_validation("divergence expects a vector field");
  const std::size_t npts = g.size();
  const auto& in = vec.coeffs();
  std::vector<cplx> out(npts, cplx(0.0));
  for (int d = 0; d < g.dim; ++d) {
    for (std::size_t j = 0; j < npts; ++j) {
      if (on_nyquist(g, j, d)) continue;
      double xi_d = g.fundamental() * g.k_vector(j)[d];
      out[j] += in[d * npts + j] * cplx(0.0, xi_d);
    }
  }
  return SpectralField::from_coeffs(g, 1, std::move(out));
}

SpectralField curl(const SpectralField& vec) {
  const Grid& g = vec.grid();
  if (g.dim < 2 || vec.rank() != g.dim)
    fail_validation("curl needs a 2D or 3D vector field");
  const std::size_t npts = g.size();
  const auto& in = vec.coeffs();
  auto dcomp = [&](int d, std::size_t j) -> cplx {
    if (on_nyquist(g, j, d)) return cplx(0.0);
    double xi_d = g.fundamental() * g.k_vector(j)[d];
    return cplx(0.0, xi_d);
  };
  if (g.dim == 2) {
    std::vector<cplx> out(npts);
    for (std::size_t j = 0; j < npts; ++j)
      out[j] = dcomp(0, j) * in[1 * npts + j] - dcomp(1, j) * in[0 * npts + j];
    return SpectralField::from_coeffs(g, 1, std::move(out));
  }
  std::vector<cplx> out(3 * npts);
  for (std::size_t j = 0; j < npts; ++j) {
    out[0 * npts + j] = dcomp(1, j) * in[2 * npts + j] - dcomp(2, j) * in[1 * npts + j];
    out[1 * npts + j] = dcomp(2, j) * in[0 * npts + j] - dcomp(0, j) * in[2 * npts + j];
    out[2 * npts + j] = dcomp(0, j) * in[1 * npts + j] - dcomp(1, j) * in[0 * npts + j];
  }
  return SpectralField::from_coeffs(g, 3, std::move(out));
}

SpectralField curl_of_scalar(const SpectralField& psi) {
  const Grid& g = psi.grid();
  if (g.dim != 2 || psi.rank() != 1)
    fail_validation("curl_of_scalar is a 2D operation on a scalar");
  SpectralField gp = grad(psi);
  const std::size_t npts = g.size();
  std::vector<cplx> out(2 * npts);
  const auto& in = gp.coeffs();
  for (std::size_t j = 0; j < npts; ++j) {
    out[0 * npts + j] = in[1 * npts + j];
    out[1 * npts + j] = -in[0 * npts + j];
  }
  return SpectralField::from_coeffs(g, 2, std::move(out));
}

SpectralField laplacian(const SpectralField& f) {
  return apply_multiplier(
      f, [](const std::array<double, 3>&, double xi2) { return cplx(-xi2, 0.0); });
}

SpectralField grad_laplacian(const SpectralField& scalar) {
  return grad(laplacian(scalar));
}

SpectralField inv_laplacian(const SpectralField& f) {
  return apply_multiplier(f, [](const std::array<double, 3>&, double xi2) {
    return xi2 == 0.0 ? cplx(0.0) : cplx(-1.0 / xi2, 0.0);
  });
}

SpectralField inv_lap_div(const SpectralField& vec) {
  return inv_laplacian(divergence(vec));
}

void helmholtz(const SpectralField& u, SpectralField& pot, SpectralField& rot) {
  const Grid& g = u.grid();
  if (u.rank() != g.dim) fail_validation("helmholtz expects a vector field");
  const std::size_t npts = g.size();
  const auto& in = u.coeffs();
  std::vector<cplx> cp(in.size()), cr(in.size());
  for (std::size_t j = 0; j < npts; ++j) {
    double xi2 = g.xi_squared(j);
    auto xi = xi_of(g, j);
    cplx d(0.0);
    for (int dax = 0; dax < g.dim; ++dax) d += xi[dax] * in[dax * npts + j];
    for (int dax = 0; dax < g.dim; ++dax) {
      cplx p = xi2 == 0.0 ? cplx(0.0) : cplx(xi[dax] / xi2) * d;
      cp[dax * npts + j] = p;
      cr[dax * npts + j] = in[dax * npts + j] - p;
    }
  }
  pot = SpectralField::from_coeffs(g, g.dim, std::move(cp));
  rot = SpectralField::from_coeffs(g, g.dim, std::move(cr));
}

bool dealias_keeps(const Grid& g, std::size_t flat) {
  double cutoff = (2.0 / 3.0) * g.nyquist();
  return g.xi_squared(flat) < cutoff * cutoff;
}

SpectralField dealias(const SpectralField& f) {
  const Grid& g = f.grid();
  const std::size_t npts = g.size();
  std::vector<cplx> out(f.coeffs());
  for (std::size_t j = 0; j < npts; ++j) {
    if (dealias_keeps(g, j)) continue;
    for (int c = 0; c < f.rank(); ++c) out[c * npts + j] = cplx(0.0);
  }
  return SpectralField::from_coeffs(g, f.rank(), std::move(out));
}

SpectralField product(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid();
  if (!(g == b.grid())) fail_validation("product operands must share the grid");
  const std::size_t npts = g.size();
  int rank = std::max(a.rank(), b.rank());
  if (a.rank() != b.rank() && a.rank() != 1 && b.rank() != 1)
    fail_validation("product ranks must match or one operand be scalar");
  const auto& sa = a.samples();
  const auto& sb = b.samples();
  std::vector<double> out(static_cast<std::size_t>(rank) * npts);
  for (int c = 0; c < rank; ++c) {
    const double* pa = sa.data() + (a.rank() == 1 ? 0 : c * npts);
    const double* pb = sb.data() + (b.rank() == 1 ? 0 : c * npts);
    for (std::size_t j = 0; j < npts; ++j) out[c * npts + j] = pa[j] * pb[j];
  }
  return dealias(SpectralField::from_samples(g, rank, std::move(out)));
}

SpectralField heat_flow(const SpectralField& f, double nu, double t) {
  if (t < 0.0) fail_validation("heat_flow needs t >= 0");
  return apply_multiplier(f, [nu, t](const std::array<double, 3>&, double xi2) {
    return cplx(std::exp(-nu * xi2 * t), 0.0);
  });
}

SpectralField advect(const SpectralField& u, const SpectralField& f) {
  const Grid& g = f.grid();
  if (u.rank() != g.dim) fail_validation("advect needs a velocity field");
  const std::size_t npts = g.size();
  std::vector<double> out(static_cast<std::size_t>(f.rank()) * npts, 0.0);
  const auto& su = u.samples();
  for (int c = 0; c < f.rank(); ++c) {
    SpectralField gc = grad(f.component(c));
    const auto& sg = gc.samples();
    for (int d = 0; d < g.dim; ++d)
      for (std::size_t j = 0; j < npts; ++j)
        out[c * npts + j] += su[d * npts + j] * sg[d * npts + j];
  }
  return dealias(SpectralField::from_samples(g, f.rank(), std::move(out)));
}

SpectralField sym_grad(const SpectralField& u) {
  const Grid& g = u.grid();
  if (u.rank() != g.dim) fail_validation("sym_grad expects a vector field");
  const std::size_t npts = g.size();
  std::vector<SpectralField> gc;
  gc.reserve(g.dim);
  for (int c = 0; c < g.dim; ++c) gc.push_back(grad(u.component(c)));
  std::vector<double> out(static_cast<std::size_t>(g.dim) * g.dim * npts);
  for (int i = 0; i < g.dim; ++i) {
    for (int jx = 0; jx < g.dim; ++jx) {
      const auto& di_uj = gc[jx].samples();  // d_i u_j at component i
      const auto& dj_ui = gc[i].samples();   // d_j u_i at component jx
      double* dst = out.data() + (i * g.dim + jx) * npts;
      for (std::size_t p = 0; p < npts; ++p)
        dst[p] = 0.5 * (di_uj[i * npts + p] + dj_ui[jx * npts + p]);
    }
  }
  return SpectralField::from_samples(g, g.dim * g.dim, std::move(out));
}

SpectralField vec_dot_tensor(const SpectralField& w, const SpectralField& T) {
  const Grid& g = w.grid();
  if (w.rank() != g.dim || T.rank() != g.dim * g.dim)
    fail_validation("vec_dot_tensor expects (vector, dim x dim tensor)");
  const std::size_t npts = g.size();
  const auto& sw = w.samples();
  const auto& st = T.samples();
  std::vector<double> out(static_cast<std::size_t>(g.dim) * npts, 0.0);
  for (int jx = 0; jx < g.dim; ++jx)
    for (int i = 0; i < g.dim; ++i)
      for (std::size_t p = 0; p < npts; ++p)
        out[jx * npts + p] += sw[i * npts + p] * st[(i * g.dim + jx) * npts + p];
  return dealias(SpectralField::from_samples(g, g.dim, std::move(out)));
}

SpectralField grad_sq(const SpectralField& scalar) {
  SpectralField gq = grad(scalar);
  const Grid& g = scalar.grid();
  const std::size_t npts = g.size();
  const auto& s = gq.samples();
  std::vector<double> out(npts, 0.0);
  for (int d = 0; d < g.dim; ++d)
    for (std::size_t j = 0; j < npts; ++j) {
      double v = s[d * npts + j];
      out[j] += v * v;
    }
  return dealias(SpectralField::from_samples(g, 1, std::move(out)));
}

SpectralField dot(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid();
  if (!(g == b.grid()) || a.rank() != b.rank())
    fail_validation("dot operands must share grid and rank");
  const std::size_t npts = g.size();
  const auto& sa = a.samples();
  const auto& sb = b.samples();
  std::vector<double> out(npts, 0.0);
  for (int c = 0; c < a.rank(); ++c)
    for (std::size_t j = 0; j < npts; ++j)
      out[j] += sa[c * npts + j] * sb[c * npts + j];
  return dealias(SpectralField::from_samples(g, 1, std::move(out)));
}

SpectralField pointwise(const SpectralField& f,
                        const std::function<double(double)>& fn) {
  std::vector<double> out(f.samples());
  for (double& v : out) v = fn(v);
  return SpectralField::from_samples(f.grid(), f.rank(), std::move(out));
}

}  // namespace nsk
