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

#include "nsk/paley.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "nsk/initial_data.hpp"
#include "nsk/operators.hpp"

namespace nsk {

namespace paley {

namespace {
// exp(-1/t) bump; f(t)/(f(t)+f(1-t)) is the C^inf step used for chi.
double bump(double t) { return t <= 0.0 ? 0.0 : std::exp(-1.0 / t); }

double smooth_step(double t) {  // 0 for t<=0, 1 for t>=1
  double a = bump(t);
  double b = bump(1.0 - t);
  return a / (a + b);
}
}  // namespace

double chi(double r) {
  // identically 1 on [0, 3/4], 0 beyond 1 (inside the allowed ball 4/3);
  // ending the transition at 1 puts the phi = 1 plateau on [1, 3/2], so the
  // dyadic centers |xi| = 2^l sit in the core of their annulus
  return 1.0 - smooth_step((r - 0.75) / 0.25);
}

double phi(double r) { return chi(r / 2.0) - chi(r); }

BlockRange block_range(const Grid& g) {
  double xi1 = g.fundamental();
  double xin = g.nyquist();
  int jmin = static_cast<int>(std::ceil(std::log2(xi1 * 4.0 / 3.0)));
  int jmax = static_cast<int>(std::floor(std::log2(xin * 3.0 / 8.0)));
  if (jmax < jmin) fail_validation("grid too coarse for any dyadic block");
  return {jmin, jmax};
}

Band certified_band(const Grid& g) {
  BlockRange r = block_range(g);
  return {std::ldexp(4.0 / 3.0, r.jmin), std::ldexp(0.75, r.jmax + 1)};
}

BlockRange middle_third(const BlockRange& r) {
  int drop = r.count() / 3;
  BlockRange m{r.jmin + drop, r.jmax - drop};
  if (m.jmax < m.jmin) m = r;
  return m;
}

}  // namespace paley

namespace {

SpectralField radial_mask(const SpectralField& f, double scale,
                          double (*shape)(double)) {
  const Grid& g = f.grid();
  const std::size_t npts = g.size();
  std::vector<cplx> out(f.coeffs());
  std::vector<double> mask(npts);
  for (std::size_t j = 0; j < npts; ++j)
    mask[j] = shape(std::sqrt(g.xi_squared(j)) * scale);
  for (int c = 0; c < f.rank(); ++c)
    for (std::size_t j = 0; j < npts; ++j) out[c * npts + j] *= mask[j];
  return SpectralField::from_coeffs(g, f.rank(), std::move(out));
}

double lr_aggregate(const std::vector<double>& terms, double r) {
  if (std::isinf(r)) {
    double best = 0.0;
    for (double t : terms) best = std::max(best, t);
    return best;
  }
  double acc = 0.0;
  for (double t : terms) acc += std::pow(t, r);
  return std::pow(acc, 1.0 / r);
}

void check_spec(const BesovSpec& spec) {
  if (spec.p < 1.0 || spec.r < 1.0)
    fail_validation("besov indices p, r must be >= 1");
}

}  // namespace

SpectralField dyadic_block(const SpectralField& f, int l) {
  paley::BlockRange range = paley::block_range(f.grid());
  if (!range.contains(l))
    fail_validation("dyadic block index outside the resolvable range");
  return radial_mask(f, std::ldexp(1.0, -l), &paley::phi);
}

SpectralField low_pass(const SpectralField& f, int l) {
  return radial_mask(f, std::ldexp(1.0, -l), &paley::chi);
}

double block_lp_norm(const SpectralField& f, int l, double p) {
  return dyadic_block(f, l).lp(p);
}

std::string BesovSpec::id() const {
  auto num = [](double v) {
    if (std::isinf(v)) return std::string("inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
  };
  if (!hybrid)
    return "B(" + num(s) + "," + num(p) + "," + num(r) + ")";
  const auto& h = *hybrid;
  return "Bh(" + num(h.s_low) + "," + num(h.s_high) + ";l0=" +
         std::to_string(h.l0) + ";" + num(h.p_low) + "," + num(h.p_high) +
         ";" + num(h.r_low) + "," + num(h.r_high) + ")";
}

BesovSpec BesovSpec::plain(double s, double p, double r) {
  BesovSpec spec;
  spec.s = s;
  spec.p = p;
  spec.r = r;
  return spec;
}

BesovSpec BesovSpec::make_hybrid(double s_low, double s_high, int l0, double p,
                                 double r) {
  BesovSpec spec;
  spec.s = s_low;
  spec.p = p;
  spec.r = r;
  spec.hybrid = Hybrid{s_low, s_high, l0, p, p, r, r};
  return spec;
}

double besov_norm(const SpectralField& f, const BesovSpec& spec) {
  if (spec.hybrid) return hybrid_besov_norm(f, spec);
  check_spec(spec);
  paley::BlockRange range = paley::block_range(f.grid());
  std::vector<double> terms;
  terms.reserve(range.count());
  for (int l = range.jmin; l <= range.jmax; ++l)
    terms.push_back(std::pow(2.0, l * spec.s) * block_lp_norm(f, l, spec.p));
  return lr_aggregate(terms, spec.r);
}

double besov_norm(const SpectralField& f, double s, double p, double r) {
  return besov_norm(f, BesovSpec::plain(s, p, r));
}

double hybrid_besov_norm(const SpectralField& f, const BesovSpec& spec) {
  if (!spec.hybrid) fail_validation("hybrid_besov_norm needs a hybrid spec");
  check_spec(spec);
  const auto& h = *spec.hybrid;
  paley::BlockRange range = paley::block_range(f.grid());
  if (!range.contains(h.l0))
    fail_validation("hybrid split l0 outside the resolvable block range");
  std::vector<double> low, high;
  for (int l = range.jmin; l <= h.l0; ++l)
    low.push_back(std::pow(2.0, l * h.s_low) * block_lp_norm(f, l, h.p_low));
  for (int l = h.l0 + 1; l <= range.jmax; ++l)
    high.push_back(std::pow(2.0, l * h.s_high) * block_lp_norm(f, l, h.p_high));
  return lr_aggregate(low, h.r_low) + lr_aggregate(high, h.r_high);
}

double chemin_lerner_norm(const std::vector<double>& times,
                          const std::vector<const SpectralField*>& fields,
                          double rho, const BesovSpec& spec) {
  check_spec(spec);
  if (times.size() < 2 || fields.size() != times.size())
    fail_validation("chemin_lerner_norm needs >= 2 time samples");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      fail_validation("chemin_lerner_norm needs strictly increasing times");

  paley::BlockRange range = paley::block_range(fields[0]->grid());
  std::vector<double> terms;
  std::vector<double> g(times.size());
  for (int l = range.jmin; l <= range.jmax; ++l) {
    for (std::size_t i = 0; i < times.size(); ++i)
      g[i] = block_lp_norm(*fields[i], l, spec.p);
    double tnorm;
    if (std::isinf(rho)) {
      tnorm = *std::max_element(g.begin(), g.end());
    } else {
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < times.size(); ++i)
        acc += 0.5 * (times[i + 1] - times[i]) *
               (std::pow(g[i], rho) + std::pow(g[i + 1], rho));
      tnorm = std::pow(acc, 1.0 / rho);
    }
    terms.push_back(std::pow(2.0, l * spec.s) * tnorm);
  }
  return lr_aggregate(terms, spec.r);
}

void NormSeries::append(double t) {
  if (!times.empty() && !(t > times.back()))
    fail_validation("norm series times must be strictly increasing");
  times.push_back(t);
}

void NormSeries::record(const std::string& key, double v) {
  auto& col = values[key];
  col.resize(times.size(), 0.0);
  col.back() = v;
}

void NormSeries::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail_io("cannot open for writing: " + path);
  out << "time,spec,value\n";
  char buf[64];
  for (const auto& [key, col] : values) {
    for (std::size_t i = 0; i < times.size() && i < col.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", times[i]);
      out << buf << ',' << key << ',';
      std::snprintf(buf, sizeof buf, "%.17g", col[i]);
      out << buf << "\n";
    }
  }
}

ScalingReport block_scaling_check(double sigma, const Grid& g) {
  SpectralField u = homogeneous_profile(sigma, g);
  paley::BlockRange mid = paley::middle_third(paley::block_range(g));
  ScalingReport rep;
  double lo = 1e300, hi = 0.0;
  for (int j = mid.jmin; j <= mid.jmax; ++j) {
    double v =
        std::pow(2.0, j * (0.5 * g.dim - sigma)) * block_lp_norm(u, j, 2.0);
    rep.blocks.push_back(j);
    rep.values.push_back(v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  rep.max_over_min = lo > 0.0 ? hi / lo : INFINITY;
  return rep;
}

}  // namespace nsk
