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

#include "nsk/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>

namespace nsk {

namespace {

// FFTW planning is not thread safe; execution through the new-array
// interface is.  Plans are cached per (dim, n, direction) with
// FFTW_ESTIMATE so results stay deterministic across runs.
struct PlanCache {
  std::mutex mu;
  struct Key {
    int dim, n, sign;
    bool operator==(const Key&) const = default;
  };
  std::vector<std::pair<Key, fftw_plan>> plans;

  fftw_plan get(int dim, int n, int sign, fftw_complex* buf) {
    std::lock_guard<std::mutex> lock(mu);
    Key key{dim, n, sign};
    for (auto& [k, p] : plans)
      if (k == key) return p;
    int dims[3] = {n, n, n};
    // x is the fastest storage index, so it is the last FFTW dimension.
    fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace_back(key, p);
    return p;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void dft(const Grid& g, std::vector<cplx>& data, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan p = plan_cache().get(g.dim, g.n, sign, buf);
  fftw_execute_dft(p, buf, buf);
}

}  // namespace

SpectralField::SpectralField(const Grid& g, int rank) : grid_(g), rank_(rank) {
  if (rank_ != 1 && rank_ != g.dim && rank_ < 1)
    fail_validation("field rank must be >= 1");
  samples_.assign(static_cast<std::size_t>(rank_) * g.size(), 0.0);
  coeffs_.assign(samples_.size(), cplx(0.0, 0.0));
  have_samples_ = true;
  have_coeffs_ = true;
}

SpectralField SpectralField::from_samples(const Grid& g, int rank,
                                          std::vector<double> samples) {
  if (samples.size() != static_cast<std::size_t>(rank) * g.size())
    fail_validation("sample array size does not match grid/rank");
  for (double v : samples)
    if (!std::isfinite(v)) fail_numeric("non-finite sample rejected");
  SpectralField f;
  f.grid_ = g;
  f.rank_ = rank;
  f.samples_ = std::move(samples);
  f.have_samples_ = true;
  f.have_coeffs_ = false;
  return f;
}

SpectralField SpectralField::from_coeffs(const Grid& g, int rank,
                                         std::vector<cplx> coeffs) {
  if (coeffs.size() != static_cast<std::size_t>(rank) * g.size())
    fail_validation("coefficient array size does not match grid/rank");
  for (const cplx& v : coeffs)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail_numeric("non-finite coefficient rejected");
  SpectralField f;
  f.grid_ = g;
  f.rank_ = rank;
  f.coeffs_ = std::move(coeffs);
  f.have_coeffs_ = true;
  f.have_samples_ = false;
  return f;
}

void SpectralField::ensure_coeffs() const {
  if (have_coeffs_) return;
  const std::size_t npts = grid_.size();
  coeffs_.resize(samples_.size());
  std::vector<cplx> work(npts);
  for (int c = 0; c < rank_; ++c) {
    for (std::size_t j = 0; j < npts; ++j)
      work[j] = cplx(samples_[c * npts + j], 0.0);
    dft(grid_, work, FFTW_FORWARD);
    std::copy(work.begin(), work.end(), coeffs_.begin() + c * npts);
  }
  have_coeffs_ = true;
}

void SpectralField::ensure_samples() const {
  if (have_samples_) return;
  const std::size_t npts = grid_.size();
  const double inv = 1.0 / static_cast<double>(npts);
  samples_.resize(coeffs_.size());
  std::vector<cplx> work(npts);
  for (int c = 0; c < rank_; ++c) {
    std::copy(coeffs_.begin() + c * npts, coeffs_.begin() + (c + 1) * npts,
              work.begin());
    dft(grid_, work, FFTW_BACKWARD);
    // Hermitian inputs leave an O(eps) imaginary residue; drop it.
    for (std::size_t j = 0; j < npts; ++j)
      samples_[c * npts + j] = work[j].real() * inv;
  }
  have_samples_ = true;
}

const std::vector<double>& SpectralField::samples() const {
  ensure_samples();
  return samples_;
}

const std::vector<cplx>& SpectralField::coeffs() const {
  ensure_coeffs();
  return coeffs_;
}

double SpectralField::sample(int comp, std::size_t j) const {
  return samples()[comp * grid_.size() + j];
}

cplx SpectralField::coeff(int comp, std::size_t j) const {
  return coeffs()[comp * grid_.size() + j];
}

double SpectralField::l2() const { return lp(2.0); }

double SpectralField::lp(double p) const {
  const auto& s = samples();
  const std::size_t npts = grid_.size();
  if (std::isinf(p)) return linf();
  double acc = 0.0;
  for (std::size_t j = 0; j < npts; ++j) {
    double m2 = 0.0;
    for (int c = 0; c < rank_; ++c) {
      double v = s[c * npts + j];
      m2 += v * v;
    }
    acc += std::pow(m2, p / 2.0);
  }
  return std::pow(grid_.cell_volume() * acc, 1.0 / p);
}

double SpectralField::linf() const {
  const auto& s = samples();
  const std::size_t npts = grid_.size();
  double best = 0.0;
  for (std::size_t j = 0; j < npts; ++j) {
    double m2 = 0.0;
    for (int c = 0; c < rank_; ++c) {
      double v = s[c * npts + j];
      m2 += v * v;
    }
    best = std::max(best, m2);
  }
  return std::sqrt(best);
}

double SpectralField::mean(int comp) const {
  const auto& s = samples();
  const std::size_t npts = grid_.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < npts; ++j) acc += s[comp * npts + j];
  return acc / static_cast<double>(npts);
}

double SpectralField::min_value() const {
  const auto& s = samples();
  return *std::min_element(s.begin(), s.end());
}

double SpectralField::max_value() const {
  const auto& s = samples();
  return *std::max_element(s.begin(), s.end());
}

bool SpectralField::all_finite() const {
  for (double v : samples())
    if (!std::isfinite(v)) return false;
  return true;
}

SpectralField SpectralField::component(int comp) const {
  const std::size_t npts = grid_.size();
  std::vector<double> out(samples().begin() + comp * npts,
                          samples().begin() + (comp + 1) * npts);
  return from_samples(grid_, 1, std::move(out));
}

namespace {
void check_compatible(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid()) || a.rank() != b.rank())
    fail_validation("field operands must share grid and rank");
}
}  // namespace

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  return axpy(1.0, a, b);
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  check_compatible(a, b);
  std::vector<double> out(a.samples());
  const auto& sb = b.samples();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= sb[j];
  return SpectralField::from_samples(a.grid(), a.rank(), std::move(out));
}

SpectralField operator*(double c, const SpectralField& f) {
  std::vector<double> out(f.samples());
  for (double& v : out) v *= c;
  return SpectralField::from_samples(f.grid(), f.rank(), std::move(out));
}

SpectralField axpy(double alpha, const SpectralField& x,
                   const SpectralField& y) {
  check_compatible(x, y);
  std::vector<double> out(y.samples());
  const auto& sx = x.samples();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += alpha * sx[j];
  return SpectralField::from_samples(x.grid(), x.rank(), std::move(out));
}

SpectralField stack(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid()))
    fail_validation("stacked fields must share the grid");
  std::vector<double> out(a.samples());
  out.insert(out.end(), b.samples().begin(), b.samples().end());
  return SpectralField::from_samples(a.grid(), a.rank() + b.rank(),
                                     std::move(out));
}

double vacuum_floor() { return 1e-6; }

SpectralField FluidState::rho() const {
  std::vector<double> out(q.samples());
  for (double& v : out) v = std::exp(v);
  return SpectralField::from_samples(q.grid(), 1, std::move(out));
}

double FluidState::min_rho() const {
  return std::exp(q.min_value());
}

void FluidState::require_no_vacuum() const {
  if (min_rho() < vacuum_floor())
    fail_numeric("vacuum: density fell below the hard floor");
}

}  // namespace nsk
