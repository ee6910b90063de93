// Copyright 2026 The phonock authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phonock/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "phonock/version.hpp"

namespace phonock {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config: '" + path + "': " + what);
}

double get_number(const json& j, const std::string& path, double fallback) {
  if (!j.contains(path)) return fallback;
  if (!j[path].is_number()) config_error(path, "expected a number");
  return j[path].get<double>();
}

int get_int(const json& j, const std::string& path, int fallback) {
  if (!j.contains(path)) return fallback;
  if (!j[path].is_number_integer()) config_error(path, "expected an integer");
  return j[path].get<int>();
}

std::string get_string(const json& j, const std::string& path,
                       const std::string& fallback) {
  if (!j.contains(path)) return fallback;
  if (!j[path].is_string()) config_error(path, "expected a string");
  return j[path].get<std::string>();
}

InitialStateSpec parse_initial_state(const std::string& text) {
  InitialStateSpec spec;
  if (text == "thermal") {
    spec.kind = InitialStateSpec::Kind::Thermal;
  } else if (text == "vacuum") {
    spec.kind = InitialStateSpec::Kind::Vacuum;
  } else if (text.rfind("fock:", 0) == 0) {
    spec.kind = InitialStateSpec::Kind::Fock;
    try {
      spec.fock_n = std::stoi(text.substr(5));
    } catch (const std::exception&) {
      config_error("initial_state", "expected fock:<integer>");
    }
  } else if (text.rfind("coherent:", 0) == 0) {
    spec.kind = InitialStateSpec::Kind::Coherent;
    try {
      spec.coherent_alpha = std::stod(text.substr(9));
    } catch (const std::exception&) {
      config_error("initial_state", "expected coherent:<real amplitude>");
    }
  } else {
    config_error("initial_state",
                 "expected thermal | vacuum | fock:k | coherent:alpha");
  }
  return spec;
}

std::string initial_state_string(const InitialStateSpec& spec) {
  switch (spec.kind) {
    case InitialStateSpec::Kind::Thermal:
      return "thermal";
    case InitialStateSpec::Kind::Vacuum:
      return "vacuum";
    case InitialStateSpec::Kind::Fock:
      return "fock:" + std::to_string(spec.fock_n);
    case InitialStateSpec::Kind::Coherent:
      return "coherent:" + fmt(spec.coherent_alpha);
  }
  return "thermal";
}

void run_pool(int n_tasks, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, n_tasks));
  if (threads == 1) {
    for (int i = 0; i < n_tasks; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (target_m < 1 || target_m > 40)
    config_error("target_m", "must be in 1..40");
  if (sideband != 1) config_error("sideband", "only s = 1 is supported");
  if (omega <= 0.0) config_error("omega", "must be > 0");
  if (regime == Regime::ExplicitKappa && kappa_explicit <= 0.0)
    config_error("kappa", "explicit-kappa regime requires kappa > 0");
  if (sweep.values.empty() && ratio <= 0.0)
    config_error("ratio", "must be > 0");
  for (std::size_t i = 0; i < sweep.values.size(); ++i) {
    if (sweep.values[i] <= 0.0)
      config_error("sweep.values", "values must be strictly positive");
    if (i > 0 && sweep.values[i] <= sweep.values[i - 1])
      config_error("sweep.values", "values must be strictly increasing");
  }
  if (nbar_m < 0.0 || nbar_c < 0.0)
    config_error("nbar_m", "occupancies must be >= 0");
  if (n_optical < 2) config_error("truncation.optical", "must be >= 2");
  if (n_mechanical != 0 && n_mechanical < target_m + 2)
    config_error("truncation.mechanical", "must be 0 (auto) or >= target_m + 2");
  if (rtol <= 0.0 || atol <= 0.0)
    config_error("integrator", "tolerances must be > 0");
  if (evolve_horizon <= 0.0) config_error("evolve.horizon", "must be > 0");
  if (evolve_samples < 2) config_error("evolve.samples", "must be >= 2");
  if (initial_state.kind == InitialStateSpec::Kind::Fock &&
      initial_state.fock_n < 0)
    config_error("initial_state", "fock level must be >= 0");
}

ExperimentConfig config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

  ExperimentConfig c;
  c.target_m = get_int(j, "target_m", c.target_m);
  c.sideband = get_int(j, "sideband", c.sideband);
  c.omega = get_number(j, "omega", c.omega);

  const std::string regime = get_string(j, "regime", "bad-cavity");
  if (regime == "bad-cavity")
    c.regime = Regime::BadCavity;
  else if (regime == "good-cavity")
    c.regime = Regime::GoodCavity;
  else if (regime == "explicit-kappa")
    c.regime = Regime::ExplicitKappa;
  else
    config_error("regime", "expected bad-cavity | good-cavity | explicit-kappa");
  c.kappa_explicit = get_number(j, "kappa", c.kappa_explicit);

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    if (!s.is_object()) config_error("sweep", "expected an object");
    const std::string axis = get_string(s, "axis", "gamma_over_kappa_eff");
    if (axis == "gamma_over_kappa_eff")
      c.sweep.axis = SweepAxis::GammaOverKappaEff;
    else if (axis == "gamma_over_kappa")
      c.sweep.axis = SweepAxis::GammaOverKappa;
    else
      config_error("sweep.axis",
                   "expected gamma_over_kappa_eff | gamma_over_kappa");
    if (s.contains("values")) {
      if (!s["values"].is_array()) config_error("sweep.values", "expected an array");
      for (const auto& v : s["values"]) {
        if (!v.is_number()) config_error("sweep.values", "expected numbers");
        c.sweep.values.push_back(v.get<double>());
      }
    } else if (s.contains("from") || s.contains("to") || s.contains("count")) {
      const double from = get_number(s, "from", 0.0);
      const double to = get_number(s, "to", 0.0);
      const int count = get_int(s, "count", 0);
      if (from <= 0.0 || to <= from || count < 2)
        config_error("sweep", "log spacing needs 0 < from < to and count >= 2");
      for (int i = 0; i < count; ++i)
        c.sweep.values.push_back(
            from * std::pow(to / from, double(i) / (count - 1)));
    }
  }
  c.ratio = get_number(j, "ratio", c.ratio);
  c.nbar_m = get_number(j, "nbar_m", c.nbar_m);
  c.nbar_c = get_number(j, "nbar_c", c.nbar_c);
  if (j.contains("truncation")) {
    const json& t = j["truncation"];
    if (!t.is_object()) config_error("truncation", "expected an object");
    c.n_optical = get_int(t, "optical", c.n_optical);
    c.n_mechanical = get_int(t, "mechanical", c.n_mechanical);
  }
  c.initial_state =
      parse_initial_state(get_string(j, "initial_state", "thermal"));
  if (j.contains("integrator")) {
    const json& t = j["integrator"];
    if (!t.is_object()) config_error("integrator", "expected an object");
    c.rtol = get_number(t, "rtol", c.rtol);
    c.atol = get_number(t, "atol", c.atol);
  }
  if (j.contains("evolve")) {
    const json& t = j["evolve"];
    if (!t.is_object()) config_error("evolve", "expected an object");
    c.evolve_horizon = get_number(t, "horizon", c.evolve_horizon);
    c.evolve_samples = get_int(t, "samples", c.evolve_samples);
  }
  c.output_dir = get_string(j, "output_dir", c.output_dir);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) config_error("seed", "expected unsigned");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  c.validate();
  return c;
}

ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

std::string config_to_json(const ExperimentConfig& config) {
  json j;
  j["target_m"] = config.target_m;
  j["sideband"] = config.sideband;
  j["omega"] = config.omega;
  switch (config.regime) {
    case Regime::BadCavity: j["regime"] = "bad-cavity"; break;
    case Regime::GoodCavity: j["regime"] = "good-cavity"; break;
    case Regime::ExplicitKappa: j["regime"] = "explicit-kappa"; break;
  }
  j["kappa"] = config.kappa_explicit;
  json sweep;
  sweep["axis"] = config.sweep.axis == SweepAxis::GammaOverKappaEff
                      ? "gamma_over_kappa_eff"
                      : "gamma_over_kappa";
  sweep["values"] = config.sweep.values;
  j["sweep"] = sweep;
  j["ratio"] = config.ratio;
  j["nbar_m"] = config.nbar_m;
  j["nbar_c"] = config.nbar_c;
  j["truncation"] = {{"optical", config.n_optical},
                     {"mechanical", config.n_mechanical}};
  j["initial_state"] = initial_state_string(config.initial_state);
  j["integrator"] = {{"rtol", config.rtol}, {"atol", config.atol}};
  j["evolve"] = {{"horizon", config.evolve_horizon},
                 {"samples", config.evolve_samples}};
  j["output_dir"] = config.output_dir;
  j["seed"] = config.seed;
  return j.dump(2);
}

std::string apply_override(const std::string& json_text, const std::string& key,
                           const std::string& value) {
  json j = json::parse(json_text);
  std::string pointer = "/" + key;
  for (auto& ch : pointer)
    if (ch == '.') ch = '/';
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;  // bare strings are legal override values
  }
  j[json::json_pointer(pointer)] = parsed;
  return j.dump();
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  const std::string canon = config_to_json(config);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

ResolvedModel resolve_model(const ExperimentConfig& config) {
  config.validate();
  ResolvedModel model;
  model.calibration = first_zero(config.target_m, config.sideband);
  SystemParams& p = model.params;
  p.omega_m = 1.0;
  p.g = model.calibration.eta;
  p.Omega = config.omega;
  p.Delta = model.calibration.detuning;
  p.s = config.sideband;
  p.nbar_m = config.nbar_m;
  p.nbar_c = config.nbar_c;
  p.N_c = config.n_optical;
  p.N_m = config.n_mechanical > 0 ? config.n_mechanical : config.target_m + 15;

  const double eta = model.calibration.eta;
  switch (config.regime) {
    case Regime::BadCavity:
      p.kappa = 20.0 * chi_max(p, eta, config.target_m);
      break;
    case Regime::GoodCavity:
      p.kappa = chi_ref(p, eta, config.target_m);
      break;
    case Regime::ExplicitKappa:
      p.kappa = config.kappa_explicit;
      break;
  }
  model.chi_reference = chi_ref(p, eta, config.target_m);
  model.kappa_eff = kappa_eff(p, eta, config.target_m);
  return model;
}

double gamma_for_ratio(const ResolvedModel& model, SweepAxis axis, double ratio) {
  return axis == SweepAxis::GammaOverKappaEff ? ratio * model.kappa_eff
                                              : ratio * model.params.kappa;
}

DensityMatrix make_initial_state(const ExperimentConfig& config,
                                 const SystemParams& params) {
  const FockSpace mech(params.N_m);
  switch (config.initial_state.kind) {
    case InitialStateSpec::Kind::Thermal:
      return thermal_state(params.nbar_m, mech);
    case InitialStateSpec::Kind::Vacuum:
      return fock_state(0, mech);
    case InitialStateSpec::Kind::Fock:
      return fock_state(config.initial_state.fock_n, mech);
    case InitialStateSpec::Kind::Coherent:
      return coherent_state(config.initial_state.coherent_alpha, mech);
  }
  throw std::logic_error("make_initial_state: unreachable");
}

namespace {

struct PointSolution {
  DensityMatrix reduced;
  double residual = 0.0;
};

PointSolution solve_steady_point(const ResolvedModel& model,
                                 const ExperimentConfig& config, double gamma) {
  SystemParams p = model.params;
  p.gamma = gamma;
  const double eta = model.calibration.eta;
  if (config.regime == Regime::BadCavity) {
    const Liouvillian liouv = effective_liouvillian(p, eta, config.target_m);
    DensityMatrix rho = steady_state(liouv);
    return PointSolution{std::move(rho), steady_residual(liouv, rho)};
  }
  const Liouvillian liouv = full_liouvillian(p);
  const DensityMatrix rho_full = steady_state(liouv);
  const double resid = steady_residual(liouv, rho_full);
  return PointSolution{displaced_frame_reduce(rho_full, p), resid};
}

ResultRow measure_point(const ResolvedModel& model, const ExperimentConfig& config,
                        double ratio, int metric_threads) {
  ResultRow row;
  row.ratio = ratio;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const double gamma = gamma_for_ratio(model, config.sweep.axis, ratio);
    const PointSolution sol = solve_steady_point(model, config, gamma);
    row.fidelity = fidelity_to_fock(sol.reduced, config.target_m);
    row.purity = purity(sol.reduced);
    NonclassicalityOptions nopts;
    nopts.threads = metric_threads;
    row.nonclassicality = nonclassicality(sol.reduced, nopts);
    row.n_mean = mean_occupation(sol.reduced);
    row.residual = sol.residual;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
    row.fidelity = row.purity = row.nonclassicality = row.n_mean = row.residual =
        std::numeric_limits<double>::quiet_NaN();
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return row;
}

}  // namespace

std::vector<CalibrationResult> run_calibrate(int M_max) {
  if (M_max < 1 || M_max > 40)
    throw std::invalid_argument("run_calibrate: M_max must be in 1..40");
  std::vector<CalibrationResult> rows;
  rows.reserve(M_max);
  for (int m = 1; m <= M_max; ++m) rows.push_back(first_zero(m));
  return rows;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& config, int threads) {
  config.validate();
  if (config.sweep.values.empty())
    throw std::invalid_argument("run_sweep: config has no sweep values");
  const ResolvedModel model = resolve_model(config);
  const int n = static_cast<int>(config.sweep.values.size());
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  const int pool = std::max(1, std::min(threads, n));
  const int metric_threads = pool > 1 ? 1 : threads;
  std::vector<ResultRow> rows(n);
  run_pool(n, pool, [&](int i) {
    rows[i] = measure_point(model, config, config.sweep.values[i], metric_threads);
  });
  return rows;
}

std::vector<EvolveRow> run_evolve(const ExperimentConfig& config) {
  config.validate();
  const ResolvedModel model = resolve_model(config);
  SystemParams p = model.params;
  p.gamma = gamma_for_ratio(model, config.sweep.axis, config.ratio);
  const double eta = model.calibration.eta;
  const double t_final = config.evolve_horizon / model.kappa_eff;

  std::vector<EvolveRow> rows;
  if (config.regime == Regime::BadCavity) {
    const Liouvillian liouv = effective_liouvillian(p, eta, config.target_m);
    EvolveOptions opts;
    opts.rtol = config.rtol;
    opts.atol = config.atol;
    opts.n_samples = config.evolve_samples;
    opts.fidelity_target = config.target_m;
    const EvolutionRecord rec =
        evolve(liouv, make_initial_state(config, p), t_final, opts);
    rows.resize(rec.times.size());
    for (std::size_t i = 0; i < rec.times.size(); ++i)
      rows[i] = EvolveRow{rec.times[i], rec.fidelity[i], rec.purity[i],
                          rec.n_mean[i], rec.trace_drift[i]};
    return rows;
  }

  const Liouvillian liouv = full_liouvillian(p);
  const DensityMatrix mech0 = make_initial_state(config, p);
  Mat vac = Mat::Zero(p.N_c, p.N_c);
  vac(0, 0) = 1.0;
  const Mat joint = kron(vac, mech0.matrix());
  const DensityMatrix rho0 =
      DensityMatrix::from_matrix(joint, Shape{p.N_c, p.N_m});
  EvolveOptions opts;
  opts.rtol = config.rtol;
  opts.atol = config.atol;
  opts.n_samples = config.evolve_samples;
  opts.store_states = true;
  const EvolutionRecord rec = evolve(liouv, rho0, t_final, opts);
  rows.resize(rec.times.size());
  StateCheckOptions loose;
  loose.hermiticity_tol = 1e-8;
  loose.trace_tol = 1e-6;
  loose.positivity_tol = 1e-6;
  loose.normalize = true;
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    Mat herm = (rec.states[i] + rec.states[i].adjoint().eval()) / 2.0;
    const DensityMatrix full =
        DensityMatrix::from_matrix(std::move(herm), Shape{p.N_c, p.N_m}, loose);
    const DensityMatrix reduced = displaced_frame_reduce(full, p);
    rows[i] = EvolveRow{rec.times[i], fidelity_to_fock(reduced, config.target_m),
                        purity(reduced), mean_occupation(reduced),
                        rec.trace_drift[i]};
  }
  return rows;
}

WignerOutput run_wigner(const ExperimentConfig& config) {
  config.validate();
  const ResolvedModel model = resolve_model(config);
  const double gamma = gamma_for_ratio(model, config.sweep.axis, config.ratio);
  const PointSolution sol = solve_steady_point(model, config, gamma);
  WignerOutput out;
  out.grid = wigner(sol.reduced);
  out.occupancy = phonon_distribution(sol.reduced);
  out.point.ratio = config.ratio;
  out.point.fidelity = fidelity_to_fock(sol.reduced, config.target_m);
  out.point.purity = purity(sol.reduced);
  out.point.nonclassicality = nonclassicality(sol.reduced);
  out.point.n_mean = mean_occupation(sol.reduced);
  out.point.residual = sol.residual;
  return out;
}

AuditReport run_audit(const ExperimentConfig& config) {
  config.validate();
  AuditReport report;

  auto steady_leg = [&](const ExperimentConfig& cfg, const std::string& name) {
    const ResolvedModel model = resolve_model(cfg);
    const double gamma = gamma_for_ratio(model, cfg.sweep.axis, cfg.ratio);
    const PointSolution sol = solve_steady_point(model, cfg, gamma);
    AuditLeg leg;
    leg.name = name;
    leg.fidelity = fidelity_to_fock(sol.reduced, cfg.target_m);
    leg.purity = purity(sol.reduced);
    leg.nonclassicality = nonclassicality(sol.reduced);
    leg.n_mean = mean_occupation(sol.reduced);
    leg.boundary_population =
        sol.reduced.matrix()(sol.reduced.dim() - 1, sol.reduced.dim() - 1).real();
    return leg;
  };

  const AuditLeg ref = steady_leg(config, "reference");
  report.legs.push_back(ref);

  ExperimentConfig enlarged = config;
  enlarged.n_mechanical =
      (config.n_mechanical > 0 ? config.n_mechanical : config.target_m + 15) + 5;
  enlarged.n_optical = config.n_optical + 1;
  const AuditLeg big = steady_leg(enlarged, "enlarged-truncation");
  report.legs.push_back(big);

  // integrator leg: identical horizon at rtol and rtol/10
  auto evolve_leg = [&](double rtol, const std::string& name) {
    ExperimentConfig cfg = config;
    cfg.rtol = rtol;
    cfg.evolve_horizon = std::min(config.evolve_horizon, 30.0);
    const std::vector<EvolveRow> rows = run_evolve(cfg);
    AuditLeg leg;
    leg.name = name;
    leg.fidelity = rows.back().fidelity;
    leg.purity = rows.back().purity;
    leg.nonclassicality = 0.0;
    leg.n_mean = rows.back().n_mean;
    leg.boundary_population = 0.0;
    return leg;
  };
  const AuditLeg ev_ref = evolve_leg(config.rtol, "evolve");
  const AuditLeg ev_tight = evolve_leg(config.rtol / 10.0, "evolve-tight-tol");
  report.legs.push_back(ev_ref);
  report.legs.push_back(ev_tight);

  double drift = 0.0;
  drift = std::max(drift, std::abs(ref.fidelity - big.fidelity));
  drift = std::max(drift, std::abs(ref.purity - big.purity));
  drift = std::max(drift, std::abs(ref.nonclassicality - big.nonclassicality));
  drift = std::max(drift, std::abs(ref.n_mean - big.n_mean));
  drift = std::max(drift, std::abs(ev_ref.fidelity - ev_tight.fidelity));
  drift = std::max(drift, std::abs(ev_ref.purity - ev_tight.purity));
  drift = std::max(drift, std::abs(ev_ref.n_mean - ev_tight.n_mean));
  report.max_drift = drift;
  report.pass = drift < 1e-3;
  if (!report.pass) {
    std::ostringstream diag;
    diag << "metric drift " << fmt(drift) << " >= 1e-3";
    if (ref.boundary_population > 1e-6)
      diag << "; boundary population " << fmt(ref.boundary_population)
           << " at the top mechanical level indicates a starved truncation";
    report.diagnostic = diag.str();
  }
  return report;
}

namespace {

void provenance_header(std::ostringstream& out, const ExperimentConfig& config,
                       const char* produced_by) {
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(config_hash(config)));
  out << "# phonock_version: " << kVersion << "\n";
  out << "# produced_by: " << produced_by << "\n";
  out << "# config_hash: " << hash << "\n";
  json j = json::parse(config_to_json(config));
  out << "# config: " << j.dump() << "\n";
}

}  // namespace

std::string csv_calibration(const std::vector<CalibrationResult>& rows) {
  std::ostringstream out;
  out << "# phonock_version: " << kVersion << "\n";
  out << "# produced_by: calibrate\n";
  out << "M,x_star,eta,delta_eta,detuning_over_omega_m\n";
  for (const auto& r : rows)
    out << r.M << ',' << fmt(r.x_star) << ',' << fmt(r.eta) << ','
        << fmt(r.delta_eta) << ',' << fmt(r.detuning) << "\n";
  return out.str();
}

std::string csv_sweep(const ExperimentConfig& config,
                      const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  provenance_header(out, config, "sweep");
  out << "ratio,fidelity,purity,I,n_mean,residual,wall_ms\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ResultRow& r = rows[i];
    if (!r.ok) out << "# point " << i << " failed: " << r.error << "\n";
    out << fmt(r.ratio) << ',' << fmt(r.fidelity) << ',' << fmt(r.purity) << ','
        << fmt(r.nonclassicality) << ',' << fmt(r.n_mean) << ','
        << fmt(r.residual) << ',' << fmt(r.wall_ms) << "\n";
  }
  return out.str();
}

std::string csv_evolve(const ExperimentConfig& config,
                       const std::vector<EvolveRow>& rows) {
  std::ostringstream out;
  provenance_header(out, config, "evolve");
  out << "t,fidelity,purity,n_mean,trace_drift\n";
  for (const auto& r : rows)
    out << fmt(r.t) << ',' << fmt(r.fidelity) << ',' << fmt(r.purity) << ','
        << fmt(r.n_mean) << ',' << fmt(r.trace_drift) << "\n";
  return out.str();
}

std::string csv_wigner_grid(const ExperimentConfig& config,
                            const PhaseSpaceGrid& grid) {
  std::ostringstream out;
  provenance_header(out, config, "wigner");
  out << "q,p,W\n";
  for (int i = 0; i < grid.n_q; ++i)
    for (int j = 0; j < grid.n_p; ++j)
      out << fmt(grid.q(i)) << ',' << fmt(grid.p(j)) << ','
          << fmt(grid.values(i, j)) << "\n";
  return out.str();
}

std::string csv_occupancy(const ExperimentConfig& config,
                          const Eigen::VectorXd& occupancy) {
  std::ostringstream out;
  provenance_header(out, config, "wigner");
  out << "n,p_n\n";
  for (Eigen::Index n = 0; n < occupancy.size(); ++n)
    out << n << ',' << fmt(occupancy(n)) << "\n";
  return out.str();
}

std::string audit_text(const ExperimentConfig& config, const AuditReport& report) {
  std::ostringstream out;
  provenance_header(out, config, "audit");
  for (const auto& leg : report.legs) {
    out << leg.name << ": fidelity=" << fmt(leg.fidelity)
        << " purity=" << fmt(leg.purity) << " I=" << fmt(leg.nonclassicality)
        << " n_mean=" << fmt(leg.n_mean)
        << " boundary_population=" << fmt(leg.boundary_population) << "\n";
  }
  out << "max_drift: " << fmt(report.max_drift) << "\n";
  out << "result: " << (report.pass ? "PASS" : "FAIL") << "\n";
  if (!report.diagnostic.empty()) out << "diagnostic: " << report.diagnostic << "\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
}

}  // namespace phonock
