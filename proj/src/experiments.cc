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

#include "scm/experiments.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "scm/parallel.h"
#include "scm/search.h"

namespace scm {
namespace {

using nlohmann::json;

PricingOptions Pricing(const SolverConfig& s, int threads) {
  PricingOptions o;
  o.nash = s.nash;
  o.strict_conditions = s.strict_conditions;
  o.threads = threads;
  return o;
}

StackelbergResult Solve(const MarketParams& market, const SolverConfig& s,
                        int threads) {
  if (s.method == PricingMethod::kSubGradient) {
    SubgradientOptions o;
    o.pricing = Pricing(s, threads);
    const double p0 = s.subgradient_p0 >= 0.0 ? s.subgradient_p0 : market.p_bar / 2.0;
    return SolveStackelbergSubgradient(market, p0, s.subgradient_steps, o);
  }
  return SolveStackelbergGrid(market, s.price_grid, Pricing(s, threads));
}

SolveReport Report(const MarketParams& market, StackelbergResult result) {
  SolveReport r;
  r.result = std::move(result);
  r.payoffs = EvaluatePayoffs(r.result.lower.Profile(), market);
  r.conditions = r.result.lower.conditions;
  if (!r.result.lower.converged) {
    r.exit_status = kExitNonConvergence;
  } else if (!r.conditions.AllHold()) {
    r.exit_status = kExitConditionsViolated;
  }
  return r;
}

const char* Flag(const Condition& c) {
  if (!c.applicable) return "na";
  return c.holds ? "1" : "0";
}

json ConditionJson(const Condition& c) {
  json j;
  j["margin"] = c.applicable ? json(c.margin) : json(nullptr);
  j["holds"] = c.holds;
  j["applicable"] = c.applicable;
  return j;
}

json PayoffJson(const PayoffVector& p) {
  return json{{"mu_utility", p.mu_utility},
              {"scsp_profit", p.scsp_profit},
              {"eccsp_profit", p.eccsp_profit},
              {"wno_payoff", p.wno_payoff}};
}

// Columns shared by the solve and sweep tables, swept_value excluded.
std::vector<std::string> Fields(const StrategyProfile& s, const PayoffVector& u,
                                const ConditionReport& c, bool converged) {
  return {FormatNumber(s.p),          FormatNumber(s.theta),
          FormatNumber(s.t),          FormatNumber(s.x),
          FormatNumber(u.mu_utility), FormatNumber(u.scsp_profit),
          FormatNumber(u.eccsp_profit), FormatNumber(u.wno_payoff),
          Flag(c.sponsorship_margin), Flag(c.demand_curvature),
          Flag(c.curvature_sum),      Flag(c.uniqueness),
          converged ? "1" : "0"};
}

void AppendLine(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
}

std::vector<std::string> Header(bool with_swept_value) {
  std::vector<std::string> h;
  for (const char* col : kSweepColumns) h.emplace_back(col);
  if (!with_swept_value) h.erase(h.begin());
  return h;
}

json Comparison(double solver, double oracle, double bound) {
  const double dev = std::abs(solver - oracle);
  return json{{"solver", solver},
              {"oracle", oracle},
              {"abs_deviation", dev},
              {"bound", bound},
              {"within_bound", dev <= bound}};
}

}  // namespace

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

SolveReport RunSolve(const Config& config) {
  return Report(config.market,
                Solve(config.market, config.solver, config.solver.threads));
}

json ToJson(const ConditionReport& r) {
  return json{{"cond_25", ConditionJson(r.sponsorship_margin)},
              {"cond_26", ConditionJson(r.demand_curvature)},
              {"cond_27", ConditionJson(r.curvature_sum)},
              {"cond_29", ConditionJson(r.uniqueness)},
              {"all_hold", r.AllHold()}};
}

json ToJson(const SolveReport& r) {
  const NashSolution& n = r.result.lower;
  json trace = json::array();
  for (const auto& pt : r.result.trace) trace.push_back({pt.p, pt.payoff});
  return json{
      {"method", ToString(r.result.method)},
      {"profile",
       {{"p", n.price}, {"theta", n.theta_star}, {"t", n.t_star}, {"x", n.x_star}}},
      {"payoffs", PayoffJson(r.payoffs)},
      {"conditions", ToJson(r.conditions)},
      {"diagnostics",
       {{"converged", n.converged},
        {"sweeps", n.sweeps},
        {"last_change", n.last_change},
        {"nonconcave_response", n.nonconcave_response},
        {"at_price_cap", r.result.at_price_cap},
        {"feasible", r.result.feasible},
        {"stopped_early", r.result.stopped_early}}},
      {"trace", trace},
      {"exit_status", r.exit_status}};
}

std::string SolveCsv(const SolveReport& r) {
  std::string out;
  AppendLine(out, Header(false));
  AppendLine(out, Fields(r.result.lower.Profile(), r.payoffs, r.conditions,
                         r.result.lower.converged));
  return out;
}

std::string ConditionsCsv(const ConditionReport& r) {
  std::string out = "condition,margin,holds,applicable\n";
  const std::pair<const char*, const Condition*> rows[] = {
      {"cond_25", &r.sponsorship_margin},
      {"cond_26", &r.demand_curvature},
      {"cond_27", &r.curvature_sum},
      {"cond_29", &r.uniqueness}};
  for (const auto& [name, c] : rows) {
    AppendLine(out, {name, FormatNumber(c->margin), c->holds ? "1" : "0",
                     c->applicable ? "1" : "0"});
  }
  return out;
}

void SweepSpec::Validate() const {
  bool known = false;
  for (const char* key : kSweepKeys) known = known || param == key;
  if (!known) throw ConfigError("--param: '" + param + "' cannot be swept");
  if (!(from < to)) throw ConfigError("--from must be smaller than --to");
  if (steps < 2) throw ConfigError("--steps must be at least 2");
  for (const auto& [key, value] : overrides) {
    if (key == param) {
      throw ConfigError(key + ": cannot override the swept parameter");
    }
    MarketParams probe;
    try {
      ParamByName(probe, key);
    } catch (const std::invalid_argument&) {
      throw ConfigError(key + ": unknown market parameter");
    }
  }
}

std::vector<double> SweepSpec::Values() const {
  return UniformGrid(from, to, static_cast<std::size_t>(steps));
}

std::vector<SweepRow> RunSweep(const Config& config, const SweepSpec& spec) {
  spec.Validate();
  MarketParams base = config.market;
  for (const auto& [key, value] : spec.overrides) ParamByName(base, key) = value;

  const auto values = spec.Values();
  std::vector<MarketParams> markets;
  markets.reserve(values.size());
  for (double v : values) {
    MarketParams m = base;
    ParamByName(m, spec.param) = v;
    try {
      m.Validate();
    } catch (const DomainError& e) {
      throw ConfigError(spec.param + "=" + FormatNumber(v) + ": " + e.what());
    }
    markets.push_back(m);
  }

  // Parallelism is spent across sweep points; each point solves serially.
  return ParallelMap<SweepRow>(
      values.size(), config.solver.threads, [&](std::size_t i) {
        const SolveReport r =
            Report(markets[i], Solve(markets[i], config.solver, 1));
        const NashSolution& n = r.result.lower;
        SweepRow row;
        row.swept_value = values[i];
        row.p_star = n.price;
        row.theta_star = n.theta_star;
        row.t_star = n.t_star;
        row.x_star = n.x_star;
        row.payoffs = r.payoffs;
        row.conditions = r.conditions;
        row.converged = n.converged;
        return row;
      });
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::string out;
  AppendLine(out, Header(true));
  for (const auto& row : rows) {
    auto fields = Fields({row.p_star, row.theta_star, row.t_star, row.x_star},
                         row.payoffs, row.conditions, row.converged);
    fields.insert(fields.begin(), FormatNumber(row.swept_value));
    AppendLine(out, fields);
  }
  return out;
}

json SweepJson(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  json out;
  out["param"] = spec.param;
  out["from"] = spec.from;
  out["to"] = spec.to;
  out["steps"] = spec.steps;
  out["overrides"] = spec.overrides;
  json list = json::array();
  for (const auto& row : rows) {
    list.push_back({{"swept_value", row.swept_value},
                    {"p_star", row.p_star},
                    {"theta_star", row.theta_star},
                    {"t_star", row.t_star},
                    {"x_star", row.x_star},
                    {"payoffs", PayoffJson(row.payoffs)},
                    {"conditions", ToJson(row.conditions)},
                    {"converged", row.converged}});
  }
  out["rows"] = list;
  return out;
}

OracleComparison RunOracle(const Config& config, int price_grid) {
  const SolverConfig& s = config.solver;
  const MarketParams& m = config.market;
  OracleComparison cmp;
  cmp.solve = RunSolve(config);
  const NashSolution& n = cmp.solve.result.lower;

  const int np = price_grid > 0 ? price_grid : s.oracle_price_grid;
  cmp.oracle_price = OraclePrice(m, GridSpec{np}, s.nash, s.threads);
  cmp.price_bound = m.p_bar / static_cast<double>(np - 1);

  cmp.oracle_nash = OracleNash(n.price, m, GridSpec{s.oracle_nash_grid},
                               s.nash.response.demand_tol, s.threads);
  cmp.nash_bound = 2.0 / static_cast<double>(s.oracle_nash_grid - 1);

  cmp.oracle_x =
      OracleBestX(n.theta_star, n.t_star, n.price, m, GridSpec{s.oracle_x_grid});
  cmp.x_bound = 2.0 / static_cast<double>(s.oracle_x_grid - 1);

  cmp.audit = AuditDeviations(n.theta_star, n.t_star, n.price, m,
                              GridSpec{s.audit_grid}, s.nash.response.demand_tol);
  return cmp;
}

json ToJson(const OracleComparison& c) {
  const NashSolution& n = c.solve.result.lower;
  return json{
      {"price", Comparison(n.price, c.oracle_price.p, c.price_bound)},
      {"theta", Comparison(n.theta_star, c.oracle_nash.theta, c.nash_bound)},
      {"t", Comparison(n.t_star, c.oracle_nash.t, c.nash_bound)},
      {"x", Comparison(n.x_star, c.oracle_x, c.x_bound)},
      {"oracle_nash",
       {{"is_eps_nash", c.oracle_nash.is_eps_nash}, {"eps", c.oracle_nash.eps}}},
      {"deviation_audit",
       {{"scsp_gain", c.audit.scsp_gain},
        {"eccsp_gain", c.audit.eccsp_gain},
        {"eps", c.audit.eps()}}},
      {"exit_status", c.solve.exit_status}};
}

std::string OracleCsv(const OracleComparison& c) {
  const NashSolution& n = c.solve.result.lower;
  std::string out = "quantity,solver,oracle,abs_deviation,bound\n";
  const struct {
    const char* name;
    double solver, oracle, bound;
  } rows[] = {
      {"price", n.price, c.oracle_price.p, c.price_bound},
      {"theta", n.theta_star, c.oracle_nash.theta, c.nash_bound},
      {"t", n.t_star, c.oracle_nash.t, c.nash_bound},
      {"x", n.x_star, c.oracle_x, c.x_bound},
  };
  for (const auto& r : rows) {
    AppendLine(out, {r.name, FormatNumber(r.solver), FormatNumber(r.oracle),
                     FormatNumber(std::abs(r.solver - r.oracle)),
                     FormatNumber(r.bound)});
  }
  AppendLine(out, {"deviation_eps", FormatNumber(c.audit.eps()), "", "", ""});
  return out;
}

}  // namespace scm
