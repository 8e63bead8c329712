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

#include "nsk/nsk.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nsk/config.hpp"
#include "nsk/initial_data.hpp"
#include "nsk/diagnostics.hpp"
#include "nsk/field_io.hpp"
#include "nsk/linear.hpp"
#include "nsk/operators.hpp"
#include "nsk/paley.hpp"
#include "nsk/stepper.hpp"
#include "nsk/verify.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

nsk_status to_status(const nsk::Error& e) {
  g_last_error = e.what();
  switch (e.kind()) {
    case nsk::ErrorKind::Validation: return NSK_ERR_VALIDATION;
    case nsk::ErrorKind::Numeric: return NSK_ERR_NUMERIC;
    case nsk::ErrorKind::Io: return NSK_ERR_IO;
  }
  return NSK_ERR_VALIDATION;
}

template <typename Fn>
nsk_status guarded(Fn&& fn) {
  try {
    fn();
    return NSK_OK;
  } catch (const nsk::Error& e) {
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NSK_ERR_VALIDATION;
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) nsk::fail_io("cannot create output directory: " + dir);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) nsk::fail_io("cannot open for writing: " + path);
  out << text;
  if (!out) nsk::fail_io("short write: " + path);
}

double maybe_inf(double v) { return v <= 0.0 ? INFINITY : v; }

}  // namespace

struct nsk_field {
  nsk::SpectralField f;
};

extern "C" {

const char* nsk_version(void) { return "0.1.0"; }

const char* nsk_last_error(void) { return g_last_error.c_str(); }

nsk_status nsk_field_load(const char* path, nsk_field** out) {
  return guarded([&] {
    if (!path || !out) nsk::fail_validation("null argument");
    auto* h = new nsk_field{nsk::read_field(path)};
    *out = h;
  });
}

nsk_status nsk_field_save(const nsk_field* f, const char* path) {
  return guarded([&] {
    if (!f || !path) nsk::fail_validation("null argument");
    nsk::write_field(f->f, path);
  });
}

void nsk_field_free(nsk_field* f) { delete f; }

nsk_status nsk_field_info(const nsk_field* f, int* dim, int* n, double* length,
                          int* rank) {
  return guarded([&] {
    if (!f) nsk::fail_validation("null field");
    if (dim) *dim = f->f.grid().dim;
    if (n) *n = f->f.grid().n;
    if (length) *length = f->f.grid().length;
    if (rank) *rank = f->f.rank();
  });
}

nsk_status nsk_field_stats(const nsk_field* f, double* min, double* max,
                           double* l2) {
  return guarded([&] {
    if (!f) nsk::fail_validation("null field");
    if (min) *min = f->f.min_value();
    if (max) *max = f->f.max_value();
    if (l2) *l2 = f->f.l2();
  });
}

nsk_status nsk_field_besov_norm(const nsk_field* f, double s, double p,
                                double r, double* out) {
  return guarded([&] {
    if (!f || !out) nsk::fail_validation("null argument");
    *out = nsk::besov_norm(f->f, s, maybe_inf(p), maybe_inf(r));
  });
}

nsk_status nsk_cmd_simulate(const char* config_path, const char* out_dir,
                            int64_t seed_override, int quiet) {
  return guarded([&] {
    if (!config_path) nsk::fail_validation("null config path");
    nsk::RunConfig rc = nsk::RunConfig::from_json_file(config_path);
    if (seed_override >= 0) rc.seed = static_cast<std::uint64_t>(seed_override);
    std::string dir = out_dir ? out_dir : rc.output_dir;
    ensure_dir(dir);

    nsk::SimulationSetup setup = rc.to_setup();
    nsk::Trajectory traj = nsk::simulate(setup);

    traj.diagnostics.write_csv(dir + "/diagnostics.csv");
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "/snapshot_q_%04zu.nskf", i);
      nsk::write_field(traj.snapshots[i].q, dir + name);
      std::snprintf(name, sizeof name, "/snapshot_u_%04zu.nskf", i);
      nsk::write_field(traj.snapshots[i].u, dir + name);
    }
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(rc.hash()));
    json manifest = {
        {"version", nsk_version()},
        {"config", json::parse(rc.to_json_text())},
        {"config_hash", hash},
        {"snapshots", traj.snapshots.size()},
        {"aborted", traj.aborted},
        {"abort_reason", traj.abort_reason},
    };
    write_text(dir + "/manifest.json", manifest.dump(2));
    if (!quiet)
      std::cout << "simulate: " << traj.snapshots.size() << " snapshots -> "
                << dir << (traj.aborted ? "  [aborted: " + traj.abort_reason + "]"
                                        : "")
                << "\n";
    if (traj.aborted) nsk::fail_numeric("run aborted: " + traj.abort_reason);
  });
}

nsk_status nsk_cmd_data(const char* config_path, const char* out_dir,
                        int quiet) {
  return guarded([&] {
    if (!config_path) nsk::fail_validation("null config path");
    nsk::RunConfig rc = nsk::RunConfig::from_json_file(config_path);
    std::string dir = out_dir ? out_dir : rc.output_dir;
    ensure_dir(dir);
    nsk::SimulationSetup setup = rc.to_setup();
    nsk::write_field(setup.initial.q, dir + "/data_q.nskf");
    nsk::write_field(setup.initial.u, dir + "/data_u.nskf");

    const double n2 = 0.5 * rc.grid.dim;
    json report = {
        {"kind", rc.data.kind},
        {"q", {{"l2", setup.initial.q.l2()},
               {"linf", setup.initial.q.linf()},
               {"besov_n2_2_inf", nsk::besov_norm(setup.initial.q, n2, 2.0,
                                                  INFINITY)}}},
        {"u", {{"l2", setup.initial.u.l2()},
               {"linf", setup.initial.u.linf()},
               {"besov_n2m1_2_inf",
                nsk::besov_norm(setup.initial.u, n2 - 1.0, 2.0, INFINITY)}}},
        {"min_rho", std::exp(setup.initial.q.min_value())},
    };
    write_text(dir + "/data_report.json", report.dump(2));
    if (!quiet) std::cout << "data: report -> " << dir << "\n";
  });
}

nsk_status nsk_cmd_semigroup(double mu, double lambda, double kappa, double K,
                             int block, double tmax, int samples,
                             const char* out_dir, int quiet) {
  return guarded([&] {
    if (samples < 4) nsk::fail_validation("semigroup needs >= 4 samples");
    if (!(tmax > 0.0)) nsk::fail_validation("semigroup needs tmax > 0");
    if (K != 0.0)
      nsk::fail_validation("block decay study covers the pressureless "
                           "system; pass K = 0");
    std::string dir = out_dir ? out_dir : ".";
    ensure_dir(dir);
    nsk::Grid g(1, 256, nsk::Grid::two_pi());
    nsk::LinearCoeffs lc{mu, lambda + mu, kappa, 0.0};
    lc.validate();

    std::vector<double> tg(samples);
    for (int i = 0; i < samples; ++i) tg[i] = tmax * (i + 1) / samples;
    nsk::DecayReport rep = nsk::verify_block_decay(g, block, lc, tg, 12345);

    // time series of the block norm and the Lyapunov functional
    nsk::FluidState s0;
    s0.q = nsk::dyadic_block(
        nsk::random_band_limited(g, 1, 0, g.n / 2 - 1, 1.0, 12345), block);
    s0.u = nsk::dyadic_block(
        nsk::random_band_limited(g, 1, 0, g.n / 2 - 1, 1.0, 12346), block);
    double alpha = nsk::dyadic_energy_alpha_max(lc);
    std::ostringstream csv;
    csv << "t,block_norm,k_l\n";
    char buf[96];
    for (int i = 0; i < samples; ++i) {
      nsk::FluidState st = nsk::apply_semigroup(s0, tg[i], lc);
      double bn = nsk::stack(nsk::grad(st.q), st.u).l2();
      double kl = nsk::dyadic_energy(st, block, alpha, lc);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", tg[i], bn, kl);
      csv << buf;
    }
    write_text(dir + "/semigroup.csv", csv.str());
    json verdict = {{"block", rep.block},
                    {"predicted_rate", rep.predicted_rate},
                    {"measured_rate", rep.measured_rate},
                    {"c_fit", rep.c_fit}};
    write_text(dir + "/semigroup.json", verdict.dump(2));
    if (!quiet)
      std::cout << "semigroup: block " << block << " measured_rate "
                << rep.measured_rate << " predicted_rate "
                << rep.predicted_rate << " c_fit " << rep.c_fit << "\n";
  });
}

nsk_status nsk_cmd_verify(const char* suite_or_null, const char* out_dir,
                          int quiet, int* failures) {
  return guarded([&] {
    int fails = 0;
    json verdicts = json::array();
    if (suite_or_null && std::string(suite_or_null) != "all") {
      nsk::SuiteResult r = nsk::run_suite(suite_or_null);
      if (!r.pass) ++fails;
      if (!quiet)
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  ("
                  << r.seconds << " s)  " << r.details << "\n";
      verdicts.push_back(json{{"name", r.name},
                              {"pass", r.pass},
                              {"seconds", r.seconds},
                              {"details", json::parse(r.details)}});
    } else {
      std::ostringstream sink;
      std::string vj;
      fails = nsk::run_all_suites(quiet ? sink : std::cout, &vj);
      verdicts = json::parse(vj);
    }
    if (out_dir) {
      ensure_dir(out_dir);
      write_text(std::string(out_dir) + "/verify.json", verdicts.dump(2));
    }
    if (failures) *failures = fails;
  });
}

nsk_status nsk_cmd_besov(const char* field_path, double s, double p, double r,
                         const char* out_dir, int quiet) {
  return guarded([&] {
    if (!field_path) nsk::fail_validation("null field path");
    nsk::SpectralField f = nsk::read_field(field_path);
    double pp = maybe_inf(p), rr = maybe_inf(r);
    nsk::BesovSpec spec = nsk::BesovSpec::plain(s, pp, rr);
    double norm = nsk::besov_norm(f, spec);
    nsk::paley::BlockRange range = nsk::paley::block_range(f.grid());

    std::ostringstream csv;
    csv << "block,lp_norm,weighted\n";
    char buf[96];
    json blocks = json::array();
    for (int l = range.jmin; l <= range.jmax; ++l) {
      double bn = nsk::block_lp_norm(f, l, pp);
      double wn = std::pow(2.0, l * s) * bn;
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", l, bn, wn);
      csv << buf;
      blocks.push_back(json{{"l", l}, {"lp", bn}, {"weighted", wn}});
    }
    json report = {{"spec", spec.id()}, {"norm", norm}, {"blocks", blocks}};
    if (out_dir) {
      ensure_dir(out_dir);
      write_text(std::string(out_dir) + "/besov.csv", csv.str());
      write_text(std::string(out_dir) + "/besov.json", report.dump(2));
    }
    if (!quiet) std::cout << spec.id() << " = " << norm << "\n";
  });
}

}  // extern "C"
