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

#ifndef PHONOCK_EXPERIMENT_HPP
#define PHONOCK_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "phonock/calibration.hpp"
#include "phonock/dynamics.hpp"
#include "phonock/metrics.hpp"
#include "phonock/model.hpp"

namespace phonock {

enum class Regime { BadCavity, GoodCavity, ExplicitKappa };
enum class SweepAxis { GammaOverKappaEff, GammaOverKappa };

struct SweepSpec {
  SweepAxis axis = SweepAxis::GammaOverKappaEff;
  std::vector<double> values;  // strictly positive, sorted ascending
};

struct InitialStateSpec {
  enum class Kind { Thermal, Vacuum, Fock, Coherent };
  Kind kind = Kind::Thermal;
  int fock_n = 0;
  double coherent_alpha = 0.0;
};

/// One experiment: a target Fock state, a cavity regime, and either a
/// damping-ratio sweep or a single ratio point. Loaded from a JSON file and
/// round-trips losslessly through serialization.
struct ExperimentConfig {
  int target_m = 5;
  int sideband = 1;
  double omega = 0.02;  // drive amplitude, units of omega_m
  Regime regime = Regime::BadCavity;
  double kappa_explicit = 0.0;  // used by Regime::ExplicitKappa
  SweepSpec sweep;
  double ratio = 1e-4;  // single-point commands (evolve, wigner, audit)
  double nbar_m = 0.0;
  double nbar_c = 0.0;
  int n_optical = 4;
  int n_mechanical = 0;  // 0 selects target_m + 15
  InitialStateSpec initial_state;
  double rtol = 1e-8;
  double atol = 1e-10;
  double evolve_horizon = 50.0;  // units of 1/kappa_eff
  int evolve_samples = 200;
  std::string output_dir = "out";
  std::uint64_t seed = 0;  // reserved; the solvers are deterministic

  void validate() const;
};

ExperimentConfig config_from_json(const std::string& json_text);
ExperimentConfig config_from_file(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

/// Apply a dotted-key override such as "sweep.count=7" or
/// "initial_state=fock:1" on the JSON form of a config.
std::string apply_override(const std::string& json_text, const std::string& key,
                           const std::string& value);

/// FNV-1a hash of the canonical JSON form; stamped into every output file.
std::uint64_t config_hash(const ExperimentConfig& config);

/// Calibration, regime kappa and detuning resolved for a config. gamma is
/// left at zero; set it per ratio point.
struct ResolvedModel {
  SystemParams params;
  CalibrationResult calibration;
  double kappa_eff = 0.0;
  double chi_reference = 0.0;
};
ResolvedModel resolve_model(const ExperimentConfig& config);

/// gamma implied by a ratio value under the config's sweep axis.
double gamma_for_ratio(const ResolvedModel& model, SweepAxis axis, double ratio);

/// Mechanical initial state selected by the config.
DensityMatrix make_initial_state(const ExperimentConfig& config,
                                 const SystemParams& params);

struct ResultRow {
  double ratio = 0.0;
  double fidelity = 0.0;
  double purity = 0.0;
  double nonclassicality = 0.0;
  double n_mean = 0.0;
  double residual = 0.0;
  double wall_ms = 0.0;
  bool ok = true;
  std::string error;
};

struct EvolveRow {
  double t = 0.0;
  double fidelity = 0.0;
  double purity = 0.0;
  double n_mean = 0.0;
  double trace_drift = 0.0;
};

struct WignerOutput {
  PhaseSpaceGrid grid;
  Eigen::VectorXd occupancy;
  ResultRow point;
};

struct AuditLeg {
  std::string name;
  double fidelity = 0.0;
  double purity = 0.0;
  double nonclassicality = 0.0;
  double n_mean = 0.0;
  double boundary_population = 0.0;  // top mechanical level occupancy
};

struct AuditReport {
  std::vector<AuditLeg> legs;
  double max_drift = 0.0;
  bool pass = false;
  std::string diagnostic;
};

std::vector<CalibrationResult> run_calibrate(int M_max);

/// One steady-state solve per sweep value; bad cavity uses the effective
/// phonon master equation, good cavity (and explicit kappa) the full
/// two-mode one reduced in the displaced frame. Points run on a worker pool
/// and are merged in parameter order; per-point failures are recorded
/// in-row and do not stop the run.
std::vector<ResultRow> run_sweep(const ExperimentConfig& config, int threads);

std::vector<EvolveRow> run_evolve(const ExperimentConfig& config);

WignerOutput run_wigner(const ExperimentConfig& config);

AuditReport run_audit(const ExperimentConfig& config);

// CSV emission. Every file starts with a commented provenance block carrying
// the library version, the config hash and the flattened config.
std::string csv_calibration(const std::vector<CalibrationResult>& rows);
std::string csv_sweep(const ExperimentConfig& config,
                      const std::vector<ResultRow>& rows);
std::string csv_evolve(const ExperimentConfig& config,
                       const std::vector<EvolveRow>& rows);
std::string csv_wigner_grid(const ExperimentConfig& config,
                            const PhaseSpaceGrid& grid);
std::string csv_occupancy(const ExperimentConfig& config,
                          const Eigen::VectorXd& occupancy);
std::string audit_text(const ExperimentConfig& config, const AuditReport& report);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace phonock

#endif  // PHONOCK_EXPERIMENT_HPP
