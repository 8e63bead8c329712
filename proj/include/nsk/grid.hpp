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

#include <array>
#include <cstddef>
#include <string>

namespace nsk {

/// Exception kinds used across the library; the C API maps them to status
/// codes, the CLI to exit codes.
enum class ErrorKind { Validation, Numeric, Io };

class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string msg) : kind_(kind), msg_(std::move(msg)) {}
  const char* what() const noexcept override { return msg_.c_str(); }
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
  std::string msg_;
};

[[noreturn]] void fail_validation(const std::string& msg);
[[noreturn]] void fail_numeric(const std::string& msg);
[[noreturn]] void fail_io(const std::string& msg);

/// Periodic box [0, L)^dim sampled on n points per axis.  n must be a power
/// of two (>= 8) so that dyadic block indices line up with representable
/// wavenumbers.  Wavenumbers are xi_k = 2*pi*k/L with k in [-n/2, n/2).
struct Grid {
  int dim = 1;
  int n = 0;
  double length = 0.0;

  Grid() = default;
  Grid(int dim_, int n_, double length_);

  std::size_t size() const;  // n^dim sample points
  double spacing() const { return length / n; }
  double volume() const;
  double cell_volume() const;
  double fundamental() const { return two_pi() / length; }
  double nyquist() const { return fundamental() * (n / 2); }

  /// FFT storage index -> signed mode index in [-n/2, n/2).
  int k_of_index(int i) const { return i < n / 2 ? i : i - n; }
  /// Signed mode vector of a flat storage index (x fastest).
  std::array<int, 3> k_vector(std::size_t flat) const;
  /// |xi|^2 of a flat storage index.
  double xi_squared(std::size_t flat) const;
  /// Physical coordinate of a flat storage index.
  std::array<double, 3> point(std::size_t flat) const;

  bool operator==(const Grid&) const = default;

  static double two_pi();
};

}  // namespace nsk
