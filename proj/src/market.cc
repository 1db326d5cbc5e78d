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

#include "scm/market.h"

#include <cmath>
#include <limits>
#include <sstream>

namespace scm {
namespace {

bool InOpenUnit(double v) { return v > 0.0 && v < 1.0; }
bool InClosedUnit(double v) { return v >= 0.0 && v <= 1.0; }

[[noreturn]] void Fail(const char* what, double value) {
  std::ostringstream os;
  os << what << " (got " << value << ")";
  throw DomainError(os.str());
}

void RequireUnit(const char* name, double v) {
  if (!InClosedUnit(v)) Fail(name, v);
}

void RequireCurvature(const char* name, double k) {
  if (!InOpenUnit(k)) Fail(name, k);
}

// y^(1-k)/(1-k) with 0^(1-k) = 0.
double PowerLaw(double y, double k) {
  if (y == 0.0) return 0.0;
  return std::pow(y, 1.0 - k) / (1.0 - k);
}

void RequirePrice(double p, const MarketParams& params) {
  if (!(p >= 0.0 && p <= params.p_bar)) Fail("price must lie in [0, p_bar]", p);
}

Condition Make(double margin) {
  return Condition{margin, margin > 0.0, true};
}

Condition Inapplicable() {
  return Condition{std::numeric_limits<double>::quiet_NaN(), false, false};
}

}  // namespace

void MarketParams::Validate() const {
  if (!InOpenUnit(alpha)) Fail("alpha must lie in (0,1)", alpha);
  if (!InOpenUnit(beta)) Fail("beta must lie in (0,1)", beta);
  if (!InOpenUnit(gamma)) Fail("gamma must lie in (0,1)", gamma);
  if (!InClosedUnit(l_a)) Fail("l_a must lie in [0,1]", l_a);
  if (!(sigma_e > 0.0)) Fail("sigma_e must be positive", sigma_e);
  if (!(sigma_c >= 0.0)) Fail("sigma_c must be non-negative", sigma_c);
  if (!(c_handover >= 0.0)) Fail("c_handover must be non-negative", c_handover);
  if (!(C_cache > 0.0)) Fail("C_cache must be positive", C_cache);
  if (!(w > 0.0)) Fail("w must be positive", w);
  if (!(p_bar > 0.0) || !std::isfinite(p_bar)) Fail("p_bar must be positive", p_bar);
}

double DemandValue(double y, double alpha) {
  RequireCurvature("alpha must lie in (0,1)", alpha);
  RequireUnit("demand must lie in [0,1]", y);
  return PowerLaw(y, alpha);
}

double CachingQuality(double t, double beta) {
  RequireCurvature("beta must lie in (0,1)", beta);
  RequireUnit("caching effort must lie in [0,1]", t);
  return PowerLaw(t, beta);
}

double AdRevenue(double x, double gamma) {
  RequireCurvature("gamma must lie in (0,1)", gamma);
  RequireUnit("traffic fraction must lie in [0,1]", x);
  return PowerLaw(x, gamma);
}

double MuUtility(double x, const MarketParams& params, double theta, double t,
                 double p) {
  RequireUnit("theta must lie in [0,1]", theta);
  RequirePrice(p, params);
  const double content = params.tau() * params.sigma_e;
  return content * DemandValue(x, params.alpha) +
         content * CachingQuality(t, params.beta) *
             DemandValue(1.0 - x, params.alpha) -
         (1.0 - x) * params.c_handover - (1.0 - theta) * x * p;
}

double ScspProfit(double x, double theta, double p,
                  const MarketParams& params) {
  RequireUnit("theta must lie in [0,1]", theta);
  RequirePrice(p, params);
  return params.sigma_c * AdRevenue(x, params.gamma) - theta * p * x;
}

double EccspProfit(double x, double t, const MarketParams& params) {
  RequireUnit("caching effort must lie in [0,1]", t);
  return params.sigma_c * AdRevenue(1.0 - x, params.gamma) - params.C_cache * t;
}

double WnoPayoff(double x, double p, const MarketParams& params) {
  RequireUnit("traffic fraction must lie in [0,1]", x);
  RequirePrice(p, params);
  return p * x - params.w * x * x;
}

PayoffVector EvaluatePayoffs(const StrategyProfile& s,
                             const MarketParams& params) {
  return PayoffVector{
      MuUtility(s.x, params, s.theta, s.t, s.p),
      ScspProfit(s.x, s.theta, s.p, params),
      EccspProfit(s.x, s.t, params),
      WnoPayoff(s.x, s.p, params),
  };
}

ConditionReport CheckConditions(const StrategyProfile& s,
                                const MarketParams& params) {
  RequireUnit("theta must lie in [0,1]", s.theta);
  RequireUnit("caching effort must lie in [0,1]", s.t);
  RequireUnit("traffic fraction must lie in [0,1]", s.x);
  RequirePrice(s.p, params);

  ConditionReport report;
  report.curvature_sum = Make(params.gamma + params.alpha - 1.0);
  report.uniqueness = Make(2.0 * params.alpha - 1.0);
  if (!InOpenUnit(s.x)) {
    report.sponsorship_margin = Inapplicable();
    report.demand_curvature = Inapplicable();
    return report;
  }
  const double a = params.alpha;
  report.sponsorship_margin =
      Make(params.sigma_c * std::pow(s.x, -params.gamma) - s.theta * s.p);
  const double quality = std::pow(s.t, 1.0 - params.beta) / (1.0 - params.beta);
  report.demand_curvature = Make(-std::pow(s.x, -a - 2.0) +
                                 quality * std::pow(1.0 - s.x, -a - 2.0));
  return report;
}

double& ParamByName(MarketParams& params, const std::string& key) {
  if (key == "alpha") return params.alpha;
  if (key == "beta") return params.beta;
  if (key == "gamma") return params.gamma;
  if (key == "l_a") return params.l_a;
  if (key == "sigma_e") return params.sigma_e;
  if (key == "sigma_c") return params.sigma_c;
  if (key == "c_handover") return params.c_handover;
  if (key == "C_cache") return params.C_cache;
  if (key == "w") return params.w;
  if (key == "p_bar") return params.p_bar;
  throw std::invalid_argument("unknown market parameter '" + key + "'");
}

double ParamByName(const MarketParams& params, const std::string& key) {
  MarketParams copy = params;
  return ParamByName(copy, key);
}

}  // namespace scm
