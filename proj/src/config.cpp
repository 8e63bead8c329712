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

#include "nsk/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nsk/initial_data.hpp"
#include "nsk/operators.hpp"

namespace nsk {

using nlohmann::json;

std::string variant_name(SystemVariant v) {
  switch (v) {
    case SystemVariant::RhoForm: return "rho_form";
    case SystemVariant::Nhv1: return "nhv1";
    case SystemVariant::Effective: return "effective";
    case SystemVariant::Perturbation: return "perturbation";
    case SystemVariant::Heat: return "heat";
  }
  return "nhv1";
}

SystemVariant variant_from_name(const std::string& name) {
  if (name == "rho_form") return SystemVariant::RhoForm;
  if (name == "nhv1") return SystemVariant::Nhv1;
  if (name == "effective") return SystemVariant::Effective;
  if (name == "perturbation") return SystemVariant::Perturbation;
  if (name == "heat") return SystemVariant::Heat;
  fail_validation("unknown system variant: " + name);
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

double num_or_inf(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return INFINITY;
  if (!j.is_number()) fail_validation("expected a number or \"inf\"");
  return j.get<double>();
}

json inf_or_num(double v) {
  if (std::isinf(v)) return json("inf");
  return json(v);
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "exp_euler") return Scheme::ExpEuler;
  if (name == "exp_rk2") return Scheme::ExpRk2;
  if (name == "picard") return Scheme::Picard;
  fail_validation("unknown scheme: " + name);
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::ExpEuler: return "exp_euler";
    case Scheme::ExpRk2: return "exp_rk2";
    case Scheme::Picard: return "picard";
  }
  return "exp_rk2";
}

PressureLaw pressure_from_json(const json& j, double* dP1) {
  std::string type = j.value("type", "linear");
  if (type == "zero") {
    *dP1 = 0.0;
    return PressureLaw::zero();
  }
  if (type == "linear") {
    double K = j.value("K", 1.0);
    *dP1 = K;
    return PressureLaw::linear(K);
  }
  if (type == "gamma") {
    double a = j.value("a", 1.0);
    double g = j.value("gamma", 1.4);
    *dP1 = a * g;
    return PressureLaw::gamma_law(a, g);
  }
  fail_validation("unknown pressure law type: " + type);
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail_validation(std::string("config parse error: ") + e.what());
  }
  RunConfig rc;
  rc.variant = variant_from_name(j.value("system", "nhv1"));
  const json jg = j.value("grid", json::object());
  rc.grid = Grid(jg.value("dim", 1), jg.value("n", 128),
                 jg.value("length", Grid::two_pi()));

  const json jp = j.value("params", json::object());
  rc.params.mu = jp.value("mu", 1.0);
  rc.params.lambda = jp.value("lambda", 0.0);
  rc.params.kappa = jp.value("kappa", 1.0);
  std::string cap = jp.value("capillarity", "kappa_over_rho");
  if (cap == "kappa_over_rho")
    rc.params.capillarity = CapillarityForm::OverRho;
  else if (cap == "constant")
    rc.params.capillarity = CapillarityForm::Constant;
  else
    fail_validation("unknown capillarity form: " + cap);
  std::string visc = jp.value("viscosity", "shallow_water");
  if (visc == "shallow_water")
    rc.params.viscosity = ViscosityForm::ShallowWater;
  else if (visc == "constant")
    rc.params.viscosity = ViscosityForm::Constant;
  else
    fail_validation("unknown viscosity form: " + visc);
  rc.params.pressure =
      pressure_from_json(jp.value("pressure", json::object()), &rc.params.dP1);

  const json js = j.value("stepper", json::object());
  rc.stepper.dt = js.value("dt", 1e-3);
  rc.stepper.T = js.value("T", 0.1);
  rc.stepper.scheme = scheme_from_name(js.value("scheme", "exp_rk2"));
  rc.stepper.picard_iters = js.value("picard_iters", 5);
  rc.stepper.snapshot_stride = js.value("snapshot_stride", 1);

  const json jd = j.value("data", json::object());
  rc.data.kind = jd.value("kind", "gaussian_bump");
  rc.data.sigma = jd.value("sigma", 0.5);
  rc.data.epsilon = jd.value("epsilon", 0.05);
  rc.data.l0 = jd.value("l0", 3);
  rc.data.r = jd.value("r", 2.0);
  rc.data.lambda_scale = jd.value("lambda_scale", 1);
  rc.data.amplitude = jd.value("amplitude", 0.05);
  rc.data.width_frac = jd.value("width_frac", 0.08);
  rc.data.location_frac = jd.value("location_frac", 0.25);
  rc.data.height = jd.value("height", 0.2);
  rc.data.smoothing_cells = jd.value("smoothing_cells", 2.0);
  rc.data.u_amplitude = jd.value("u_amplitude", 0.0);
  rc.data.u_kmin = jd.value("u_kmin", 1);
  rc.data.u_kmax = jd.value("u_kmax", 4);
  rc.data.h2_amplitude = jd.value("h2_amplitude", 0.0);
  rc.data.u2_amplitude = jd.value("u2_amplitude", 0.0);

  for (const json& d : j.value("diagnostics", json::array())) {
    BesovSpec spec;
    spec.s = d.value("s", 0.0);
    spec.p = num_or_inf(d.value("p", json(2.0)));
    spec.r = num_or_inf(d.value("r", json(2.0)));
    rc.diagnostics.push_back(spec);
  }

  rc.seed = j.value("seed", 1ull);
  rc.output_dir = j.value("output", "out");

  // validate early, before any allocation downstream
  rc.params.validate(rc.grid.dim);
  rc.stepper.validate();
  return rc;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_io("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string RunConfig::to_json_text() const {
  json j;
  j["system"] = variant_name(variant);
  j["grid"] = {{"dim", grid.dim}, {"n", grid.n}, {"length", grid.length}};
  json jp;
  jp["mu"] = params.mu;
  jp["lambda"] = params.lambda;
  jp["kappa"] = params.kappa;
  jp["capillarity"] = params.capillarity == CapillarityForm::OverRho
                          ? "kappa_over_rho"
                          : "constant";
  jp["viscosity"] = params.viscosity == ViscosityForm::ShallowWater
                        ? "shallow_water"
                        : "constant";
  jp["pressure"] = {{"type", "linear"}, {"K", params.dP1}};
  j["params"] = jp;
  j["stepper"] = {{"dt", stepper.dt},
                  {"T", stepper.T},
                  {"scheme", scheme_name(stepper.scheme)},
                  {"picard_iters", stepper.picard_iters},
                  {"snapshot_stride", stepper.snapshot_stride}};
  json jd;
  jd["kind"] = data.kind;
  jd["sigma"] = data.sigma;
  jd["epsilon"] = data.epsilon;
  jd["l0"] = data.l0;
  jd["r"] = data.r;
  jd["lambda_scale"] = data.lambda_scale;
  jd["amplitude"] = data.amplitude;
  jd["width_frac"] = data.width_frac;
  jd["location_frac"] = data.location_frac;
  jd["height"] = data.height;
  jd["smoothing_cells"] = data.smoothing_cells;
  jd["u_amplitude"] = data.u_amplitude;
  jd["u_kmin"] = data.u_kmin;
  jd["u_kmax"] = data.u_kmax;
  jd["h2_amplitude"] = data.h2_amplitude;
  jd["u2_amplitude"] = data.u2_amplitude;
  j["data"] = jd;
  json diag = json::array();
  for (const auto& spec : diagnostics)
    diag.push_back(
        {{"s", spec.s}, {"p", inf_or_num(spec.p)}, {"r", inf_or_num(spec.r)}});
  j["diagnostics"] = diag;
  j["seed"] = seed;
  j["output"] = output_dir;
  return j.dump(2);
}

std::uint64_t RunConfig::hash() const { return fnv1a64(to_json_text()); }

SimulationSetup RunConfig::to_setup() const {
  SimulationSetup setup;
  setup.variant = variant;
  setup.params = params;
  setup.grid = grid;
  setup.stepper = stepper;
  setup.besov_diagnostics = diagnostics;

  const Grid& g = grid;
  auto noise_u = [&](double amp, std::uint64_t salt) {
    if (amp == 0.0) return SpectralField(g, g.dim);
    return random_band_limited(g, g.dim, data.u_kmin, data.u_kmax, amp,
                               seed + salt);
  };

  FluidState s0;
  s0.time = 0.0;
  if (data.kind == "gaussian_bump") {
    SpectralField rho0 = gaussian_bump(g, data.amplitude, data.width_frac);
    s0.q = pointwise(rho0, [](double v) { return std::log(v); });
    s0.u = noise_u(data.u_amplitude, 11);
  } else if (data.kind == "density_jump") {
    SpectralField rho0 =
        density_jump(g, data.location_frac, data.height, data.smoothing_cells);
    s0.q = pointwise(rho0, [](double v) { return std::log(v); });
    s0.u = noise_u(data.u_amplitude, 11);
  } else if (data.kind == "homogeneous_profile") {
    SpectralField prof = homogeneous_profile(data.sigma, g);
    double n2 = prof.l2();
    s0.q = SpectralField(g, 1);
    SpectralField u(g, g.dim);
    std::vector<double> su(u.samples());
    const auto& sp = prof.samples();
    for (std::size_t j = 0; j < g.size(); ++j)
      su[j] = data.amplitude / std::max(n2, 1e-300) * sp[j];
    s0.u = SpectralField::from_samples(g, g.dim, std::move(su));
  } else if (data.kind == "truncated_profile") {
    TruncatedProfile tp = truncated_profile(data.epsilon, data.l0, g, data.r);
    double n2 = tp.u0.l2();
    s0.q = SpectralField(g, 1);
    SpectralField u(g, g.dim);
    std::vector<double> su(u.samples());
    const auto& sp = tp.u0.samples();
    for (std::size_t j = 0; j < g.size(); ++j)
      su[j] = data.amplitude / std::max(n2, 1e-300) * sp[j];
    s0.u = SpectralField::from_samples(g, g.dim, std::move(su));
  } else if (data.kind == "scaled_profile" || data.kind == "quasi_solution") {
    SpectralField phi = centered_bump(g, data.amplitude, data.width_frac);
    SpectralField h1 = scaled_profile(phi, data.lambda_scale);
    std::vector<double> sr(h1.samples());
    for (double& v : sr) v += 1.0;
    SpectralField rho1 = SpectralField::from_samples(g, 1, std::move(sr));
    if (rho1.min_value() <= vacuum_floor())
      fail_validation("scaled profile reaches vacuum");
    SpectralField h2 =
        data.h2_amplitude == 0.0
            ? SpectralField(g, 1)
            : random_band_limited(g, 1, data.u_kmin, data.u_kmax,
                                  data.h2_amplitude, seed + 21);
    SpectralField u2 = noise_u(data.u2_amplitude, 22);
    s0 = quasi_solution_data(rho1, h2, u2, params.mu);
    setup.rho1_0 = rho1;
    if (variant == SystemVariant::Perturbation) {
      s0.q = h2;  // perturbation runs carry (h2, u2) as unknowns
      s0.u = u2;
      s0.time = 0.0;
    }
  } else if (data.kind == "random") {
    s0.q = random_band_limited(g, 1, data.u_kmin, data.u_kmax, data.amplitude,
                               seed + 31);
    s0.u = noise_u(data.u_amplitude, 32);
  } else {
    fail_validation("unknown data kind: " + data.kind);
  }
  if (variant == SystemVariant::Effective && data.kind != "quasi_solution") {
    // the state slot carries v = u + mu grad q
    s0.u = effective_velocity(s0.q, s0.u, params.mu);
  } else if (variant == SystemVariant::Effective) {
    s0.u = effective_velocity(s0.q, s0.u, params.mu);
  }
  setup.initial = s0;
  setup.validate();
  return setup;
}

}  // namespace nsk
