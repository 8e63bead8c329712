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

#include "nsk/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nsk {

void fail_validation(const std::string& msg) {
  throw Error(ErrorKind::Validation, msg);
}
void fail_numeric(const std::string& msg) {
  throw Error(ErrorKind::Numeric, msg);
}
void fail_io(const std::string& msg) { throw Error(ErrorKind::Io, msg); }

double Grid::two_pi() { return 6.283185307179586476925286766559; }

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int dim_, int n_, double length_)
    : dim(dim_), n(n_), length(length_) {
  if (dim < 1 || dim > 3) fail_validation("grid dim must be 1, 2 or 3");
  if (!power_of_two(n) || n < 8)
    fail_validation("grid n must be a power of two >= 8");
  if (!(length > 0.0)) fail_validation("grid length must be positive");
}

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
  return s;
}

double Grid::volume() const {
  double v = 1.0;
  for (int d = 0; d < dim; ++d) v *= length;
  return v;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dim; ++d) v *= spacing();
  return v;
}

std::array<int, 3> Grid::k_vector(std::size_t flat) const {
  std::array<int, 3> k = {0, 0, 0};
  std::size_t rest = flat;
  for (int d = 0; d < dim; ++d) {
    int i = static_cast<int>(rest % n);
    rest /= n;
    k[d] = k_of_index(i);
  }
  return k;
}

double Grid::xi_squared(std::size_t flat) const {
  auto k = k_vector(flat);
  double f = fundamental();
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    double xi = f * k[d];
    s += xi * xi;
  }
  return s;
}

std::array<double, 3> Grid::point(std::size_t flat) const {
  std::array<double, 3> x = {0.0, 0.0, 0.0};
  std::size_t rest = flat;
  for (int d = 0; d < dim; ++d) {
    int i = static_cast<int>(rest % n);
    rest /= n;
    x[d] = spacing() * i;
  }
  return x;
}

}  // namespace nsk
