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

#ifndef SCM_MARKET_H_
#define SCM_MARKET_H_

// Market model of the joint sponsored-content / edge-caching market: the
// exogenous constants, the strategy profile of the three tiers, and the
// closed-form utility, profit and payoff functions together with the
// sufficient conditions for existence and uniqueness of the provider
// equilibrium.
//
// The MU's total demand is normalised to one: x is the fraction served by the
// sponsored provider (SCSP), 1 - x the fraction served from the edge cache
// (ECCSP).

#include <stdexcept>
#include <string>

namespace scm {

// Thrown on arguments outside the admissible domain of a model function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct MarketParams {
  double alpha = 0.8;       // MU demand curvature, (0,1)
  double beta = 0.5;        // caching-quality curvature, (0,1)
  double gamma = 0.8;       // advertisement-revenue curvature, (0,1)
  double l_a = 1.0;         // normalised advertisement amount, [0,1]
  double sigma_e = 40.0;    // MU utility coefficient, > 0
  double sigma_c = 120.0;   // advertisement revenue coefficient, >= 0
  double c_handover = 80.0; // MU handover cost per unit of cached demand
  double C_cache = 120.0;   // caching cost per unit effort, > 0
  double w = 1.0;           // WNO delivery cost coefficient, > 0
  double p_bar = 100.0;     // price cap, > 0

  // Advertisement discount applied to content utility.
  double tau() const { return 1.0 / (1.0 + l_a); }

  // Throws DomainError naming the first violated invariant.
  void Validate() const;

  // The default market used throughout the experiments.
  static MarketParams Defaults() { return MarketParams{}; }
};

struct StrategyProfile {
  double p = 0.0;      // WNO unit price
  double theta = 0.0;  // SCSP sponsorship factor
  double t = 0.0;      // ECCSP caching effort
  double x = 0.0;      // MU sponsored-content fraction
};

struct PayoffVector {
  double mu_utility = 0.0;
  double scsp_profit = 0.0;
  double eccsp_profit = 0.0;
  double wno_payoff = 0.0;
};

// One sufficient condition, evaluated as a margin that must be strictly
// positive. Conditions involving x^(-k) are not applicable when x sits on the
// boundary of [0,1]; `holds` is then false and `margin` is NaN.
struct Condition {
  double margin = 0.0;
  bool holds = false;
  bool applicable = true;
};

struct ConditionReport {
  Condition sponsorship_margin;  // sigma_c x^-gamma - theta p > 0
  Condition demand_curvature;    // -x^(-a-2) + g(t) (1-x)^(-a-2) > 0
  Condition curvature_sum;       // gamma + alpha - 1 > 0
  Condition uniqueness;          // 2 alpha - 1 > 0

  bool AllHold() const {
    return sponsorship_margin.holds && demand_curvature.holds &&
           curvature_sum.holds && uniqueness.holds;
  }
};

// Concave power laws y^(1-k)/(1-k) shared by the demand, quality and
// advertisement-revenue functions.
double DemandValue(double y, double alpha);     // f
double CachingQuality(double t, double beta);   // g
double AdRevenue(double x, double gamma);       // h

double MuUtility(double x, const MarketParams& params, double theta, double t,
                 double p);
double ScspProfit(double x, double theta, double p,
                  const MarketParams& params);
double EccspProfit(double x, double t, const MarketParams& params);
double WnoPayoff(double x, double p, const MarketParams& params);

PayoffVector EvaluatePayoffs(const StrategyProfile& profile,
                             const MarketParams& params);

ConditionReport CheckConditions(const StrategyProfile& profile,
                                const MarketParams& params);

// Parameter lookup by configuration key ("alpha", "sigma_e", ...). Throws
// std::invalid_argument for unknown keys.
double& ParamByName(MarketParams& params, const std::string& key);
double ParamByName(const MarketParams& params, const std::string& key);

// The ten configuration keys in canonical order.
inline constexpr const char* kParamKeys[] = {
    "alpha", "beta", "gamma", "l_a", "sigma_e",
    "sigma_c", "c_handover", "C_cache", "w", "p_bar"};

}  // namespace scm

#endif  // SCM_MARKET_H_
