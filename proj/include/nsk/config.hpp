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

#include <cstdint>
#include <string>

#include "nsk/stepper.hpp"

namespace nsk {

/// Initial-data selector of a run configuration.
struct DataSpec {
  std::string kind = "gaussian_bump";
  double sigma = 0.5;           // homogeneous_profile
  double epsilon = 0.05;        // truncated_profile
  int l0 = 3;                   // truncated_profile
  double r = 2.0;               // truncated_profile report index
  int lambda_scale = 1;         // scaled_profile / quasi_solution
  double amplitude = 0.05;      // bump or noise amplitude (density side)
  double width_frac = 0.08;     // bump width as a fraction of L
  double location_frac = 0.25;  // density_jump
  double height = 0.2;          // density_jump
  double smoothing_cells = 2.0; // density_jump
  double u_amplitude = 0.0;     // velocity noise amplitude
  int u_kmin = 1;
  int u_kmax = 4;
  double h2_amplitude = 0.0;    // quasi_solution perturbation parts
  double u2_amplitude = 0.0;
};

/// Whole-run configuration; the JSON form is the on-disk contract.
struct RunConfig {
  SystemVariant variant = SystemVariant::Nhv1;
  Grid grid{1, 128, Grid::two_pi()};
  Params params;
  StepperConfig stepper;
  DataSpec data;
  std::vector<BesovSpec> diagnostics;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_json_file(const std::string& path);
  std::string to_json_text() const;  // canonical (sorted keys)
  std::uint64_t hash() const;        // FNV-1a of the canonical text

  /// Validates and constructs the simulation inputs (initial data included).
  SimulationSetup to_setup() const;
};

std::string variant_name(SystemVariant v);
SystemVariant variant_from_name(const std::string& name);

/// FNV-1a 64-bit, used for config hashes and seeds derived from strings.
std::uint64_t fnv1a64(const std::string& text);

}  // namespace nsk
