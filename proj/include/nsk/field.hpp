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

#pragma once

#include <complex>
#include <vector>

#include "nsk/grid.hpp"

namespace nsk {

using cplx = std::complex<double>;

/// Scalar or vector field on a periodic grid, carried in both sample and
/// Fourier form.  The two representations are synchronized lazily: whichever
/// side is missing is produced on demand by an FFT of the other.  Fields are
/// value objects; every operation on them returns a new field, so sharing
/// across threads is safe once construction is done.
///
/// Storage is component-major: component c occupies [c*size, (c+1)*size) with
/// the x index fastest.  Transforms are unnormalized forward (coeff(0) equals
/// the plain sum of samples) and divided by n^dim on the way back.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const Grid& g, int rank);  // zero field

  static SpectralField from_samples(const Grid& g, int rank,
                                    std::vector<double> samples);
  static SpectralField from_coeffs(const Grid& g, int rank,
                                   std::vector<cplx> coeffs);

  const Grid& grid() const { return grid_; }
  int rank() const { return rank_; }
  bool empty() const { return rank_ == 0; }

  const std::vector<double>& samples() const;
  const std::vector<cplx>& coeffs() const;

  double sample(int comp, std::size_t j) const;
  cplx coeff(int comp, std::size_t j) const;

  /// L^p norms of the pointwise Euclidean magnitude across components,
  /// rectangle-rule quadrature on the grid (p = inf -> max over samples).
  double l2() const;
  double lp(double p) const;
  double linf() const;

  double mean(int comp = 0) const;
  double min_value() const;  // over all components
  double max_value() const;
  bool all_finite() const;

  SpectralField component(int comp) const;

 private:
  Grid grid_;
  int rank_ = 0;
  mutable std::vector<double> samples_;
  mutable std::vector<cplx> coeffs_;
  mutable bool have_samples_ = false;
  mutable bool have_coeffs_ = false;

  void ensure_samples() const;
  void ensure_coeffs() const;
};

// Pointwise linear algebra; operands must share grid and rank.
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double c, const SpectralField& f);
SpectralField axpy(double alpha, const SpectralField& x,
                   const SpectralField& y);  // alpha*x + y

/// Concatenate components of two fields on the same grid (used to measure
/// norms of stacked unknowns such as (grad q, u)).
SpectralField stack(const SpectralField& a, const SpectralField& b);

/// One time slice of the flow: q = ln(rho) and the velocity u.
struct FluidState {
  SpectralField q;
  SpectralField u;
  double time = 0.0;

  const Grid& grid() const { return q.grid(); }
  SpectralField rho() const;      // exp(q), sample space
  double min_rho() const;
  void require_no_vacuum() const; // hard floor, see vacuum_floor()
};

double vacuum_floor();  // 1e-6

}  // namespace nsk
