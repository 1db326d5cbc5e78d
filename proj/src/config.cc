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

#include <fstream>
#include <sstream>
#include <string>

#include "scm/experiments.h"

namespace scm {
namespace {

using nlohmann::json;

double Number(const json& section, const std::string& section_name,
              const std::string& key) {
  const json& v = section.at(key);
  if (!v.is_number()) {
    throw ConfigError(section_name + "." + key + ": expected a number");
  }
  return v.get<double>();
}

int Integer(const json& section, const std::string& section_name,
            const std::string& key, int minimum) {
  const json& v = section.at(key);
  if (!v.is_number_integer() || v.get<long long>() < minimum) {
    throw ConfigError(section_name + "." + key + ": expected an integer >= " +
                      std::to_string(minimum));
  }
  return v.get<int>();
}

double Positive(const json& section, const std::string& key) {
  const double v = Number(section, "solver", key);
  if (!(v > 0.0)) throw ConfigError("solver." + key + ": must be positive");
  return v;
}

double Unit(const json& section, const std::string& key) {
  const double v = Number(section, "solver", key);
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError("solver." + key + ": must lie in [0,1]");
  }
  return v;
}

MarketParams ParseMarket(const json& market) {
  if (!market.is_object()) throw ConfigError("market: expected an object");
  for (const auto& item : market.items()) {
    bool known = false;
    for (const char* key : kParamKeys) known = known || item.key() == key;
    if (!known) throw ConfigError("market." + item.key() + ": unknown key");
  }
  MarketParams params;
  for (const char* key : kParamKeys) {
    if (!market.contains(key)) {
      throw ConfigError(std::string("market.") + key + ": missing");
    }
    ParamByName(params, key) = Number(market, "market", key);
  }
  try {
    params.Validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("market: ") + e.what());
  }
  return params;
}

SolverConfig ParseSolver(const json& solver) {
  if (!solver.is_object()) throw ConfigError("solver: expected an object");
  SolverConfig cfg;
  for (const auto& item : solver.items()) {
    const std::string& key = item.key();
    if (key == "nash_tol") {
      cfg.nash.tol = Positive(solver, key);
    } else if (key == "max_sweeps") {
      cfg.nash.max_sweeps = Integer(solver, "solver", key, 1);
    } else if (key == "response_tol") {
      cfg.nash.response.tol = Positive(solver, key);
    } else if (key == "demand_tol") {
      cfg.nash.response.demand_tol = Positive(solver, key);
    } else if (key == "scan_points") {
      cfg.nash.response.scan_points = Integer(solver, "solver", key, 2);
    } else if (key == "initial_theta") {
      cfg.nash.initial_theta = Unit(solver, key);
    } else if (key == "initial_t") {
      cfg.nash.initial_t = Unit(solver, key);
    } else if (key == "price_grid") {
      cfg.price_grid = Integer(solver, "solver", key, 2);
    } else if (key == "method") {
      const json& v = item.value();
      if (v == "grid") {
        cfg.method = PricingMethod::kGridRefine;
      } else if (v == "subgradient") {
        cfg.method = PricingMethod::kSubGradient;
      } else {
        throw ConfigError("solver.method: expected \"grid\" or \"subgradient\"");
      }
    } else if (key == "subgradient_steps") {
      cfg.subgradient_steps = Integer(solver, "solver", key, 1);
    } else if (key == "subgradient_p0") {
      cfg.subgradient_p0 = Number(solver, "solver", key);
    } else if (key == "strict_conditions") {
      if (!item.value().is_boolean()) {
        throw ConfigError("solver.strict_conditions: expected a boolean");
      }
      cfg.strict_conditions = item.value().get<bool>();
    } else if (key == "threads") {
      cfg.threads = Integer(solver, "solver", key, 0);
    } else if (key == "oracle_price_grid") {
      cfg.oracle_price_grid = Integer(solver, "solver", key, 2);
    } else if (key == "oracle_nash_grid") {
      cfg.oracle_nash_grid = Integer(solver, "solver", key, 2);
    } else if (key == "oracle_x_grid") {
      cfg.oracle_x_grid = Integer(solver, "solver", key, 2);
    } else if (key == "audit_grid") {
      cfg.audit_grid = Integer(solver, "solver", key, 2);
    } else {
      throw ConfigError("solver." + key + ": unknown key");
    }
  }
  return cfg;
}

}  // namespace

Config ParseConfig(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  for (const auto& item : doc.items()) {
    if (item.key() != "market" && item.key() != "solver") {
      throw ConfigError(item.key() + ": unknown section");
    }
  }
  if (!doc.contains("market")) throw ConfigError("market: missing section");
  Config config;
  config.market = ParseMarket(doc.at("market"));
  if (doc.contains("solver")) config.solver = ParseSolver(doc.at("solver"));
  const double p0 = config.solver.subgradient_p0;
  if (p0 >= 0.0 && p0 > config.market.p_bar) {
    throw ConfigError("solver.subgradient_p0: must lie in [0, p_bar]");
  }
  return config;
}

Config LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return ParseConfig(doc);
}

void ApplyOverride(MarketParams& market, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(assignment + ": expected key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + text + "' is not a number");
  }
  try {
    ParamByName(market, key) = value;
  } catch (const std::invalid_argument&) {
    throw ConfigError(key + ": unknown market parameter");
  }
  try {
    market.Validate();
  } catch (const DomainError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace scm
