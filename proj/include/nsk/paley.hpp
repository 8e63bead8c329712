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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsk/field.hpp"

namespace nsk {

/// Dyadic frequency decomposition.
///
/// The radial cutoffs are built from one smooth plateau function:
///   chi(r)  = 1 on r <= 3/4, 0 on r >= 4/3 (C^inf monotone in between),
///   phi(r)  = chi(r/2) - chi(r), supported in {3/4 <= r <= 8/3}.
/// The telescoping identity sum_l phi(2^{-l} r) = 1 then holds exactly for
/// every r > 0, so the partition-of-unity defect on the certified band is
/// pure rounding.
namespace paley {

double chi(double r);
double phi(double r);

struct BlockRange {
  int jmin = 0;
  int jmax = -1;
  int count() const { return jmax - jmin + 1; }
  bool contains(int l) const { return l >= jmin && l <= jmax; }
};

/// Blocks fully resolvable on the grid:
///   jmin = ceil(log2(xi_1 * 4/3)), jmax = floor(log2(xi_nyq * 3/8)).
BlockRange block_range(const Grid& g);

/// |xi| interval on which the truncated sum over block_range is exactly 1.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
};
Band certified_band(const Grid& g);

/// Middle third of the range (ends dropped), where profile flatness checks
/// are performed.
BlockRange middle_third(const BlockRange& r);

}  // namespace paley

/// Delta_l f: Fourier mask phi(2^{-l}|xi|).
SpectralField dyadic_block(const SpectralField& f, int l);
/// chi(2^{-l}|xi|) f (low-pass companion of the nonhomogeneous variant).
SpectralField low_pass(const SpectralField& f, int l);
/// ||Delta_l f||_{L^p} by grid quadrature.
double block_lp_norm(const SpectralField& f, int l, double p);

/// Descriptor of a (possibly hybrid) Besov norm.  p, r in [1, inf]
/// (use INFINITY); the hybrid part splits the aggregation at block l0.
struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double r = 2.0;
  struct Hybrid {
    double s_low, s_high;
    int l0;
    double p_low, p_high;
    double r_low, r_high;
  };
  std::optional<Hybrid> hybrid;

  std::string id() const;
  static BesovSpec plain(double s, double p, double r);
  static BesovSpec make_hybrid(double s_low, double s_high, int l0, double p,
                               double r);
};

double besov_norm(const SpectralField& f, const BesovSpec& spec);
double besov_norm(const SpectralField& f, double s, double p, double r);
double hybrid_besov_norm(const SpectralField& f, const BesovSpec& spec);

/// Chemin-Lerner norm of a time series of fields: per block, the L^rho norm
/// in time (trapezoid quadrature) of ||Delta_l u(t)||_{L^p} first, then the
/// weighted l^r aggregation over blocks.
double chemin_lerner_norm(const std::vector<double>& times,
                          const std::vector<const SpectralField*>& fields,
                          double rho, const BesovSpec& spec);

/// Time series of named norm records (times strictly increasing).
struct NormSeries {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> values;

  void append(double t);
  void record(const std::string& key, double v);
  void write_csv(const std::string& path) const;
};

/// Flatness of 2^{j(N/2-sigma)} ||Delta_j u_sigma||_{L^2} for the periodized
/// |x|^{-sigma} profile over the middle third of the band.
struct ScalingReport {
  std::vector<int> blocks;
  std::vector<double> values;   // 2^{j(N/2-sigma)} ||Delta_j .||_{L2}
  double max_over_min = 0.0;
};
ScalingReport block_scaling_check(double sigma, const Grid& g);

}  // namespace nsk
