// Copyright 2026 The scmarket Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: solve, sweep, check and oracle subcommands over a
// JSON market configuration.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scm/experiments.h"

namespace {

struct Output {
  std::string path;
  std::string format;

  void Write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw scm::ConfigError(path + ": cannot write");
    out << text;
  }
  void Write(const nlohmann::json& doc) const { Write(doc.dump(2) + "\n"); }
  bool Csv() const { return format == "csv"; }
};

scm::Config Load(const std::string& path, const std::vector<std::string>& sets) {
  scm::Config config = scm::LoadConfig(path);
  for (const auto& s : sets) scm::ApplyOverride(config.market, s);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-stage sponsored-content / edge-caching market solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  Output output;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file")
        ->required();
    sub->add_option("--set", sets, "override a market parameter, key=value");
    sub->add_option("--out", output.path, "write to this file instead of stdout");
    sub->add_option("--format", output.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_str("json (csv for sweep)");
  };

  CLI::App* solve = app.add_subcommand("solve", "full three-stage solve");
  common(solve);

  scm::SweepSpec spec;
  CLI::App* sweep = app.add_subcommand("sweep", "one-parameter sweep");
  common(sweep);
  sweep->add_option("--param", spec.param, "swept market parameter")->required();
  sweep->add_option("--from", spec.from, "first value")->required();
  sweep->add_option("--to", spec.to, "last value")->required();
  sweep->add_option("--steps", spec.steps, "number of points")->required();

  CLI::App* check = app.add_subcommand("check", "conditions at the equilibrium");
  common(check);

  int grid = 0;
  CLI::App* oracle = app.add_subcommand("oracle", "solver vs brute-force oracle");
  common(oracle);
  oracle->add_option("--grid", grid, "price grid resolution")
      ->check(CLI::Range(2, 1000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : scm::kExitConfigError;
  }
  if (output.format.empty()) output.format = *sweep ? "csv" : "json";

  try {
    if (*sweep) {
      // Sweep overrides stay in the spec so they are echoed in JSON output.
      scm::Config config = scm::LoadConfig(config_path);
      for (const auto& s : sets) {
        scm::MarketParams probe = config.market;
        scm::ApplyOverride(probe, s);
        const std::string key = s.substr(0, s.find('='));
        spec.overrides[key] = scm::ParamByName(probe, key);
      }
      const auto rows = scm::RunSweep(config, spec);
      if (output.Csv()) {
        output.Write(scm::SweepCsv(rows));
      } else {
        output.Write(scm::SweepJson(spec, rows));
      }
      for (const auto& row : rows) {
        if (!row.converged) return scm::kExitNonConvergence;
      }
      return scm::kExitOk;
    }

    const scm::Config config = Load(config_path, sets);
    if (*solve) {
      const auto report = scm::RunSolve(config);
      if (output.Csv()) {
        output.Write(scm::SolveCsv(report));
      } else {
        output.Write(scm::ToJson(report));
      }
      return report.exit_status;
    }
    if (*check) {
      const auto report = scm::RunSolve(config);
      if (output.Csv()) {
        output.Write(scm::ConditionsCsv(report.conditions));
      } else {
        nlohmann::json doc = scm::ToJson(report.conditions);
        doc["at"] = {{"p", report.result.lower.price},
                     {"theta", report.result.lower.theta_star},
                     {"t", report.result.lower.t_star},
                     {"x", report.result.lower.x_star}};
        output.Write(doc);
      }
      return report.exit_status;
    }
    const auto cmp = scm::RunOracle(config, grid);
    if (output.Csv()) {
      output.Write(scm::OracleCsv(cmp));
    } else {
      output.Write(scm::ToJson(cmp));
    }
    return cmp.solve.exit_status;
  } catch (const scm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return scm::kExitConfigError;
  } catch (const scm::ConvergenceError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return scm::kExitNonConvergence;
  }
}
