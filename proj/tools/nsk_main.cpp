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

// Command-line front end; all functionality lives behind the C API of the
// nsk shared library.

#include <cstdio>

#include <CLI11.hpp>

#include "nsk/nsk.h"

namespace {

int exit_code(nsk_status st) {
  switch (st) {
    case NSK_OK: return 0;
    case NSK_ERR_NUMERIC: return 2;
    default: return 1;  // validation and I/O problems
  }
}

int finish(nsk_status st) {
  if (st != NSK_OK) std::fprintf(stderr, "error: %s\n", nsk_last_error());
  return exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral laboratory for the isothermal compressible "
               "Navier-Stokes-Korteweg system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", nsk_version());

  std::string config, out_dir, suite = "all", field_path;
  long long seed = -1;
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "suppress progress output");

  auto* sim = app.add_subcommand("simulate", "run a configured simulation");
  sim->add_option("--config", config, "JSON run configuration")->required();
  sim->add_option("--out", out_dir, "output directory (default: from config)");
  sim->add_option("--seed", seed, "override the config seed");

  auto* dat = app.add_subcommand(
      "data", "construct the configured initial data and report its norms");
  dat->add_option("--config", config, "JSON run configuration")->required();
  dat->add_option("--out", out_dir, "output directory (default: from config)");

  double mu = 1.0, lambda = 0.0, kappa = 1.0, K = 0.0, tmax = 1.0;
  int block = 3, samples = 50;
  auto* smg = app.add_subcommand(
      "semigroup", "block decay study of the linearized system");
  smg->add_option("--mu", mu, "shear viscosity")->capture_default_str();
  smg->add_option("--lambda", lambda, "second viscosity")
      ->capture_default_str();
  smg->add_option("--kappa", kappa, "capillarity")->capture_default_str();
  smg->add_option("--K", K, "pressure stiffness (must be 0 here)")
      ->capture_default_str();
  smg->add_option("--block", block, "dyadic block index")
      ->capture_default_str();
  smg->add_option("--tmax", tmax, "time horizon")->capture_default_str();
  smg->add_option("--samples", samples, "time samples")->capture_default_str();
  smg->add_option("--out", out_dir, "output directory");

  auto* ver = app.add_subcommand("verify", "run named verification suites");
  ver->add_option("--suite", suite, "suite name (default: all)");
  ver->add_option("--out", out_dir, "directory for the JSON verdict");

  double s = 0.0, p = 2.0, r = 2.0;
  auto* bes = app.add_subcommand("besov", "Besov norm report of a snapshot");
  bes->add_option("--field", field_path, "field snapshot path")->required();
  bes->add_option("--s", s, "regularity index")->capture_default_str();
  bes->add_option("--p", p, "integrability (<=0 for inf)")
      ->capture_default_str();
  bes->add_option("--r", r, "summability (<=0 for inf)")
      ->capture_default_str();
  bes->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  const char* out = out_dir.empty() ? nullptr : out_dir.c_str();
  if (sim->parsed())
    return finish(nsk_cmd_simulate(config.c_str(), out, seed, quiet));
  if (dat->parsed()) return finish(nsk_cmd_data(config.c_str(), out, quiet));
  if (smg->parsed())
    return finish(nsk_cmd_semigroup(mu, lambda, kappa, K, block, tmax, samples,
                                    out, quiet));
  if (ver->parsed()) {
    int failures = 0;
    nsk_status st = nsk_cmd_verify(
        suite == "all" ? nullptr : suite.c_str(), out, quiet, &failures);
    if (st != NSK_OK) return finish(st);
    return failures == 0 ? 0 : 2;
  }
  if (bes->parsed())
    return finish(nsk_cmd_besov(field_path.c_str(), s, p, r, out, quiet));
  return 1;
}
