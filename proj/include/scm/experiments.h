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

#ifndef SCM_EXPERIMENTS_H_
#define SCM_EXPERIMENTS_H_

// Experiment harness behind the command-line tool: configuration loading,
// single solves, condition checks, oracle audits and one-parameter sweeps.
//
// Configuration is a JSON document with two sections:
//
//   {
//     "market": { "alpha": 0.8, "beta": 0.5, ..., "p_bar": 100 },
//     "solver": { "price_grid": 101, "threads": 0 }
//   }
//
// All ten market keys are required; every solver key is optional.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scm/market.h"
#include "scm/nash.h"
#include "scm/oracle.h"
#include "scm/pricing.h"

namespace scm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  NashOptions nash;
  int price_grid = kDefaultPriceGrid;
  PricingMethod method = PricingMethod::kGridRefine;
  int subgradient_steps = 200;
  double subgradient_p0 = -1.0;  // negative selects p_bar / 2
  bool strict_conditions = false;
  int threads = 0;  // 0: hardware concurrency
  int oracle_price_grid = 101;
  int oracle_nash_grid = 201;
  int oracle_x_grid = 10001;
  int audit_grid = 1001;
};

struct Config {
  MarketParams market;
  SolverConfig solver;
};

// Throws ConfigError naming the offending key.
Config ParseConfig(const nlohmann::json& doc);
Config LoadConfig(const std::string& path);

// Applies "key=value" to the market section.
void ApplyOverride(MarketParams& market, const std::string& assignment);

// Exit statuses of the command-line tool.
enum ExitStatus : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitNonConvergence = 3,
  kExitConditionsViolated = 4,
};

struct SolveReport {
  StackelbergResult result;
  PayoffVector payoffs;
  ConditionReport conditions;
  int exit_status = kExitOk;
};

SolveReport RunSolve(const Config& config);

nlohmann::json ToJson(const ConditionReport& report);
nlohmann::json ToJson(const SolveReport& report);
std::string SolveCsv(const SolveReport& report);
std::string ConditionsCsv(const ConditionReport& report);

// Swept keys accepted by RunSweep.
inline constexpr const char* kSweepKeys[] = {
    "p_bar", "w", "sigma_e", "sigma_c", "C_cache", "c_handover", "l_a"};

struct SweepSpec {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;
  std::map<std::string, double> overrides;

  // Throws ConfigError.
  void Validate() const;
  std::vector<double> Values() const;
};

struct SweepRow {
  double swept_value = 0.0;
  double p_star = 0.0;
  double theta_star = 0.0;
  double t_star = 0.0;
  double x_star = 0.0;
  PayoffVector payoffs;
  ConditionReport conditions;
  bool converged = false;
};

// One independent three-stage solve per sweep value, in ascending order.
// Points run concurrently on `config.solver.threads` workers; the rows do not
// depend on the thread count.
std::vector<SweepRow> RunSweep(const Config& config, const SweepSpec& spec);

// Header plus one line per row; 12 significant digits, LF line endings.
std::string SweepCsv(const std::vector<SweepRow>& rows);
nlohmann::json SweepJson(const SweepSpec& spec,
                         const std::vector<SweepRow>& rows);

inline constexpr const char* kSweepColumns[] = {
    "swept_value", "p_star",      "theta_star",   "t_star",     "x_star",
    "mu_utility",  "scsp_profit", "eccsp_profit", "wno_payoff", "cond_25",
    "cond_26",     "cond_27",     "cond_29",      "converged"};

struct OracleComparison {
  SolveReport solve;
  PricePoint oracle_price;
  double price_bound = 0.0;
  OracleNashResult oracle_nash;
  double nash_bound = 0.0;
  double oracle_x = 0.0;
  double x_bound = 0.0;
  DeviationAudit audit;
};

// Solver-vs-oracle comparison at the solver's equilibrium. `price_grid`
// overrides the configured oracle price resolution when positive.
OracleComparison RunOracle(const Config& config, int price_grid = 0);
nlohmann::json ToJson(const OracleComparison& cmp);
std::string OracleCsv(const OracleComparison& cmp);

// %.12g with "nan" / "inf" spelled out.
std::string FormatNumber(double v);

}  // namespace scm

#endif  // SCM_EXPERIMENTS_H_
