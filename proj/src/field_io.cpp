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

#include "nsk/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace nsk {

namespace {
constexpr char kMagic[4] = {'N', 'S', 'K', 'F'};
}

void write_field(const SpectralField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_io("cannot open for writing: " + path);
  std::int32_t dim = f.grid().dim, n = f.grid().n, rank = f.rank();
  double L = f.grid().length;
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&dim), 4);
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&L), 8);
  out.write(reinterpret_cast<const char*>(&rank), 4);
  const auto& s = f.samples();
  out.write(reinterpret_cast<const char*>(s.data()),
            static_cast<std::streamsize>(s.size() * sizeof(double)));
  if (!out) fail_io("short write: " + path);
}

SpectralField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open for reading: " + path);
  char magic[4];
  std::int32_t dim = 0, n = 0, rank = 0;
  double L = 0.0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&dim), 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&L), 8);
  in.read(reinterpret_cast<char*>(&rank), 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    fail_io("not a field snapshot: " + path);
  Grid g(dim, n, L);
  std::vector<double> samples(static_cast<std::size_t>(rank) * g.size());
  in.read(reinterpret_cast<char*>(samples.data()),
          static_cast<std::streamsize>(samples.size() * sizeof(double)));
  if (!in) fail_io("truncated field snapshot: " + path);
  return SpectralField::from_samples(g, rank, std::move(samples));
}

void write_slice_csv(const SpectralField& f, const std::string& path, int iy,
                     int iz) {
  std::ofstream out(path);
  if (!out) fail_io("cannot open for writing: " + path);
  const Grid& g = f.grid();
  out << "x";
  for (int c = 0; c < f.rank(); ++c) out << ",c" << c;
  out << "\n";
  char buf[64];
  for (int i = 0; i < g.n; ++i) {
    std::size_t flat = static_cast<std::size_t>(i);
    if (g.dim >= 2) flat += static_cast<std::size_t>(iy) * g.n;
    if (g.dim == 3) flat += static_cast<std::size_t>(iz) * g.n * g.n;
    std::snprintf(buf, sizeof buf, "%.17g", g.spacing() * i);
    out << buf;
    for (int c = 0; c < f.rank(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", f.sample(c, flat));
      out << ',' << buf;
    }
    out << "\n";
  }
}

}  // namespace nsk
