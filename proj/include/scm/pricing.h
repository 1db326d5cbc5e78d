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

#ifndef SCM_PRICING_H_
#define SCM_PRICING_H_

// Stage I: the WNO chooses p in [0, p_bar] to maximise p x* - w x*^2, where
// (theta*, t*, x*) is the provider equilibrium induced by p. The response map
// p -> (theta*, t*) is realised by a nested Stage II solve at every price.
//
// Two independent search paths are provided: a uniform price grid refined by
// golden section, and a projected sub-gradient ascent driven by symmetric
// finite differences of the nested payoff.

#include <utility>
#include <vector>

#include "scm/market.h"
#include "scm/nash.h"

namespace scm {

struct PricePoint {
  double p = 0.0;
  double payoff = 0.0;
};

struct PricingOptions {
  NashOptions nash;
  // Exclude prices whose induced equilibrium violates the sponsorship-margin
  // or demand-curvature condition from the argmax.
  bool strict_conditions = false;
  // Worker threads for grid evaluation; 0 selects the hardware concurrency.
  int threads = 1;
};

enum class PricingMethod { kSubGradient, kGridRefine };

const char* ToString(PricingMethod method);

struct StackelbergResult {
  double p_star = 0.0;
  NashSolution lower;
  double wno_payoff = 0.0;
  PricingMethod method = PricingMethod::kGridRefine;
  std::vector<PricePoint> trace;
  bool at_price_cap = false;
  // Sub-gradient only: the iteration stopped before its step budget, either
  // after `stall_limit` non-improving steps or at a stationary projected step.
  bool stopped_early = false;
  // False when no price survived `strict_conditions`; the result then holds
  // the unconstrained argmax.
  bool feasible = true;
};

// Nested solve at one price: the Stage II equilibrium and the WNO payoff it
// induces.
std::pair<NashSolution, double> EvaluatePrice(double p,
                                              const MarketParams& params,
                                              const NashOptions& options = {});

inline constexpr int kDefaultPriceGrid = 101;
inline constexpr double kPriceRefineTolerance = 1e-6;

// Throws std::invalid_argument when grid_points < 2.
StackelbergResult SolveStackelbergGrid(const MarketParams& params,
                                       int grid_points = kDefaultPriceGrid,
                                       const PricingOptions& options = {});

struct SubgradientOptions {
  PricingOptions pricing;
  double initial_step = -1.0;  // eta_0; negative selects p_bar / 10
  double fd_width = -1.0;      // negative selects max(1e-4 p_bar, 1e-6)
  int stall_limit = 50;
};

// Projected ascent p <- clamp(p + eta_0 / sqrt(k) * dP/dp, 0, p_bar). Returns
// the best iterate. Throws std::invalid_argument when steps < 1 or p0 lies
// outside [0, p_bar].
StackelbergResult SolveStackelbergSubgradient(
    const MarketParams& params, double p0, int steps,
    const SubgradientOptions& options = {});

}  // namespace scm

#endif  // SCM_PRICING_H_
