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

#ifndef SCM_NASH_H_
#define SCM_NASH_H_

// Stage II: the non-cooperative game between the sponsored-content provider
// (SCSP, sponsorship factor theta) and the edge-caching provider (ECCSP,
// caching effort t) at a fixed WNO price p. Each provider's profit is
// evaluated through the MU's best response x*(theta, t, p); the equilibrium is
// found by alternating best responses.

#include "scm/demand.h"
#include "scm/market.h"

namespace scm {

struct ResponseOptions {
  // Width of the final golden-section bracket and of the first-order
  // refinement.
  double tol = 1e-10;
  // Tolerance on the MU first-order residual for every inner x* solve.
  double demand_tol = 1e-12;
  // Uniform points used to seed the golden-section bracket.
  int scan_points = 33;
  // Uniform points of the fallback scan used when the candidate is not a
  // local maximum.
  int fallback_points = 1001;
};

struct BestResponse {
  double value = 0.0;   // maximiser in [0,1]
  double profit = 0.0;  // provider profit at the maximiser
  // False when the second derivative of the profit was positive at the
  // golden-section candidate; `value` is then the fallback grid maximiser.
  bool concave = true;
};

// argmax over theta in [0,1] of the SCSP profit, given t and p.
BestResponse ScspBestResponse(double t, double p, const MarketParams& params,
                              const ResponseOptions& options = {});

// argmax over t in [0,1] of the ECCSP profit, given theta and p.
BestResponse EccspBestResponse(double theta, double p,
                               const MarketParams& params,
                               const ResponseOptions& options = {});

// Profits as functions of the provider's own variable, with x* solved inside.
double ScspProfitAt(double theta, double t, double p,
                    const MarketParams& params,
                    double demand_tol = kDemandTolerance);
double EccspProfitAt(double theta, double t, double p,
                     const MarketParams& params,
                     double demand_tol = kDemandTolerance);

// First and second derivatives of the provider profits along their own
// variable, from the closed-form sensitivities of x*. NaN when x* lies on the
// boundary of [0,1] (and, for the ECCSP, at t = 0).
struct ProfitDerivatives {
  double first = 0.0;
  double second = 0.0;
};
ProfitDerivatives ScspProfitDerivatives(double theta, double t, double p,
                                        const MarketParams& params,
                                        double demand_tol = kDemandTolerance);
ProfitDerivatives EccspProfitDerivatives(double theta, double t, double p,
                                         const MarketParams& params,
                                         double demand_tol = kDemandTolerance);

struct NashOptions {
  double tol = 1e-8;  // max-norm change of (theta, t) over one sweep
  int max_sweeps = 500;
  double initial_theta = 0.5;
  double initial_t = 0.5;
  ResponseOptions response;
};

struct NashSolution {
  double price = 0.0;
  double theta_star = 0.0;
  double t_star = 0.0;
  double x_star = 0.0;
  double scsp_profit = 0.0;
  double eccsp_profit = 0.0;
  bool converged = false;
  int sweeps = 0;
  double last_change = 0.0;  // max(|d theta|, |d t|) over the final sweep
  // True when either best response fell back to a grid scan at the final
  // sweep.
  bool nonconcave_response = false;
  ConditionReport conditions;

  StrategyProfile Profile() const {
    return StrategyProfile{price, theta_star, t_star, x_star};
  }
};

// Gauss-Seidel best-response iteration (SCSP first, then ECCSP) from the
// initial profile in `options`. Returns the last iterate with converged=false
// when the sweep budget runs out.
NashSolution SolveNash(double p, const MarketParams& params,
                       const NashOptions& options = {});

}  // namespace scm

#endif  // SCM_NASH_H_
