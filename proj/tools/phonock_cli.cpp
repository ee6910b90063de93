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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phonock/experiment.hpp"
#include "phonock/version.hpp"

namespace {

int default_threads() {
  if (const char* env = std::getenv("PHONOCK_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;  // library picks hardware concurrency
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

phonock::ExperimentConfig load_config(const std::string& path,
                                      const std::vector<std::string>& overrides,
                                      const std::string& out_dir) {
  std::string text = path.empty() ? "{}" : slurp(path);
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--override expects key=value, got '" + item + "'");
    text = phonock::apply_override(text, item.substr(0, eq), item.substr(eq + 1));
  }
  phonock::ExperimentConfig config = phonock::config_from_json(text);
  if (!out_dir.empty()) config.output_dir = out_dir;
  return config;
}

std::string out_path(const phonock::ExperimentConfig& config,
                     const std::string& name) {
  return config.output_dir + "/" + name;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phonock: dissipative phonon Fock-state preparation in a "
               "driven nonlinear optomechanical cavity"};
  app.set_version_flag("--version", phonock::kVersion);

  std::string config_path;
  std::string out_dir;
  int threads = default_threads();
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "JSON experiment configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--threads", threads, "worker threads for sweeps");
  app.add_option("--override", overrides,
                 "config override as dotted key=value; repeatable");

  auto* cmd_calibrate =
      app.add_subcommand("calibrate", "coupling table eta_M for M = 1..M_max");
  int m_max = 20;
  cmd_calibrate->add_option("--max-m", m_max, "largest target Fock number")
      ->check(CLI::Range(1, 40));

  auto* cmd_sweep = app.add_subcommand(
      "sweep", "steady-state fidelity/purity/I along a damping-ratio sweep");
  auto* cmd_evolve =
      app.add_subcommand("evolve", "time-resolved metrics at a single point");
  auto* cmd_wigner = app.add_subcommand(
      "wigner", "steady-state Wigner grid and phonon occupancy");
  auto* cmd_audit = app.add_subcommand(
      "audit", "truncation and tolerance convergence audit");
  app.require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_calibrate->parsed()) {
      phonock::ExperimentConfig config =
          load_config(config_path, overrides, out_dir);
      const auto rows = phonock::run_calibrate(m_max);
      const std::string path = out_path(config, "calibration.csv");
      phonock::write_text_file(path, phonock::csv_calibration(rows));
      std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
      return 0;
    }

    phonock::ExperimentConfig config =
        load_config(config_path, overrides, out_dir);

    if (cmd_sweep->parsed()) {
      const auto rows = phonock::run_sweep(config, threads);
      const std::string path = out_path(config, "sweep.csv");
      phonock::write_text_file(path, phonock::csv_sweep(config, rows));
      int failures = 0;
      for (const auto& row : rows)
        if (!row.ok) ++failures;
      std::cout << "wrote " << path << " (" << rows.size() << " points, "
                << failures << " failed)\n";
      return failures == 0 ? 0 : 1;
    }
    if (cmd_evolve->parsed()) {
      const auto rows = phonock::run_evolve(config);
      const std::string path = out_path(config, "evolve.csv");
      phonock::write_text_file(path, phonock::csv_evolve(config, rows));
      std::cout << "wrote " << path << " (" << rows.size() << " samples)\n";
      return 0;
    }
    if (cmd_wigner->parsed()) {
      const auto out = phonock::run_wigner(config);
      const std::string grid_path = out_path(config, "wigner.csv");
      const std::string occ_path = out_path(config, "occupancy.csv");
      phonock::write_text_file(grid_path, phonock::csv_wigner_grid(config, out.grid));
      phonock::write_text_file(occ_path,
                               phonock::csv_occupancy(config, out.occupancy));
      std::cout << "wrote " << grid_path << " and " << occ_path
                << " (fidelity " << out.point.fidelity << ")\n";
      return 0;
    }
    if (cmd_audit->parsed()) {
      const auto report = phonock::run_audit(config);
      const std::string path = out_path(config, "audit.txt");
      phonock::write_text_file(path, phonock::audit_text(config, report));
      std::cout << phonock::audit_text(config, report);
      return report.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
