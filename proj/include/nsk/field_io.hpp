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

#include <iosfwd>
#include <string>

#include "nsk/field.hpp"

namespace nsk {

/// Binary snapshot format: little-endian header (magic "NSKF", int32 dim,
/// int32 n, float64 L, int32 rank) followed by the row-major float64 sample
/// payload, component-major.
void write_field(const SpectralField& f, const std::string& path);
SpectralField read_field(const std::string& path);

/// CSV export of a 1D slice (x, value per component) along the x axis at
/// fixed remaining indices.
void write_slice_csv(const SpectralField& f, const std::string& path,
                     int iy = 0, int iz = 0);

}  // namespace nsk
