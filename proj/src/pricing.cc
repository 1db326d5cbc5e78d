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

#include "scm/pricing.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scm/parallel.h"
#include "scm/search.h"

namespace scm {
namespace {

struct Evaluation {
  NashSolution nash;
  double payoff = 0.0;
};

bool Admissible(const NashSolution& nash) {
  return nash.conditions.sponsorship_margin.holds &&
         nash.conditions.demand_curvature.holds;
}

// Payoff used for ranking prices; inadmissible prices sink to -inf under the
// strict-conditions flag.
double Score(const Evaluation& e, bool strict) {
  if (strict && !Admissible(e.nash)) {
    return -std::numeric_limits<double>::infinity();
  }
  return e.payoff;
}

Evaluation Evaluate(double p, const MarketParams& params,
                    const NashOptions& options) {
  auto [nash, payoff] = EvaluatePrice(p, params, options);
  return Evaluation{std::move(nash), payoff};
}

StackelbergResult Finish(const Evaluation& best, const MarketParams& params,
                         PricingMethod method, double resolution) {
  StackelbergResult r;
  r.p_star = best.nash.price;
  r.lower = best.nash;
  r.wno_payoff = best.payoff;
  r.method = method;
  r.at_price_cap = params.p_bar - r.p_star <= resolution;
  return r;
}

}  // namespace

const char* ToString(PricingMethod method) {
  switch (method) {
    case PricingMethod::kSubGradient: return "subgradient";
    case PricingMethod::kGridRefine: return "grid_refine";
  }
  return "unknown";
}

std::pair<NashSolution, double> EvaluatePrice(double p,
                                              const MarketParams& params,
                                              const NashOptions& options) {
  if (!(p >= 0.0 && p <= params.p_bar)) {
    throw DomainError("price must lie in [0, p_bar]");
  }
  NashSolution nash = SolveNash(p, params, options);
  const double payoff = WnoPayoff(nash.x_star, p, params);
  return {std::move(nash), payoff};
}

StackelbergResult SolveStackelbergGrid(const MarketParams& params,
                                       int grid_points,
                                       const PricingOptions& options) {
  if (grid_points < 2) {
    throw std::invalid_argument("price grid needs at least two points");
  }
  params.Validate();
  const bool strict = options.strict_conditions;
  const auto prices =
      UniformGrid(0.0, params.p_bar, static_cast<std::size_t>(grid_points));
  const auto evals = ParallelMap<Evaluation>(
      prices.size(), options.threads,
      [&](std::size_t i) { return Evaluate(prices[i], params, options.nash); });

  std::size_t best = 0;
  for (std::size_t i = 1; i < evals.size(); ++i) {
    if (Score(evals[i], strict) > Score(evals[best], strict)) best = i;
  }
  const bool feasible = Score(evals[best], strict) >
                        -std::numeric_limits<double>::infinity();
  const bool rank_strict = strict && feasible;
  if (!feasible) {
    for (std::size_t i = 1; i < evals.size(); ++i) {
      if (evals[i].payoff > evals[best].payoff) best = i;
    }
  }

  // The nested payoff is continuous in p, so its maximiser lies in one of
  // the two cells adjacent to the best node.
  const double lo = prices[best == 0 ? 0 : best - 1];
  const double hi = prices[std::min(best + 1, prices.size() - 1)];
  const double refined = GoldenSectionMaximize(
      [&](double p) { return Score(Evaluate(p, params, options.nash), rank_strict); },
      lo, hi, kPriceRefineTolerance * std::max(1.0, params.p_bar));
  Evaluation chosen = evals[best];
  Evaluation candidate = Evaluate(refined, params, options.nash);
  if (Score(candidate, rank_strict) > Score(chosen, rank_strict)) {
    chosen = std::move(candidate);
  }

  StackelbergResult r =
      Finish(chosen, params, PricingMethod::kGridRefine,
             params.p_bar / static_cast<double>(grid_points - 1));
  r.feasible = feasible;
  r.trace.reserve(evals.size() + 1);
  for (const auto& e : evals) r.trace.push_back({e.nash.price, e.payoff});
  if (chosen.nash.price != evals[best].nash.price) {
    r.trace.push_back({chosen.nash.price, chosen.payoff});
  }
  return r;
}

StackelbergResult SolveStackelbergSubgradient(
    const MarketParams& params, double p0, int steps,
    const SubgradientOptions& options) {
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  params.Validate();
  if (!(p0 >= 0.0 && p0 <= params.p_bar)) {
    throw std::invalid_argument("initial price must lie in [0, p_bar]");
  }
  const double cap = params.p_bar;
  const double eta0 = options.initial_step > 0.0 ? options.initial_step : cap / 10.0;
  const double width =
      options.fd_width > 0.0 ? options.fd_width : std::max(1e-4 * cap, 1e-6);
  const bool strict = options.pricing.strict_conditions;
  const NashOptions& nash = options.pricing.nash;
  auto payoff_at = [&](double p) { return EvaluatePrice(p, params, nash).second; };

  Evaluation current = Evaluate(p0, params, nash);
  Evaluation best = current;
  std::vector<PricePoint> trace{{p0, current.payoff}};
  bool stopped_early = false;
  int stall = 0;
  for (int k = 1; k <= steps; ++k) {
    const double p = current.nash.price;
    const double a = std::max(p - width, 0.0);
    const double b = std::min(p + width, cap);
    const double slope = (payoff_at(b) - payoff_at(a)) / (b - a);
    const double next =
        std::clamp(p + eta0 / std::sqrt(static_cast<double>(k)) * slope, 0.0, cap);
    if (std::abs(next - p) <= 1e-12 * std::max(1.0, cap)) {
      stopped_early = true;  // projected step vanished
      break;
    }
    current = Evaluate(next, params, nash);
    trace.push_back({next, current.payoff});
    if (Score(current, strict) > Score(best, strict)) {
      best = current;
      stall = 0;
    } else if (++stall >= options.stall_limit) {
      stopped_early = true;
      break;
    }
  }

  StackelbergResult r =
      Finish(best, params, PricingMethod::kSubGradient,
             cap / static_cast<double>(kDefaultPriceGrid - 1));
  r.feasible = !strict || Admissible(best.nash);
  r.trace = std::move(trace);
  r.stopped_early = stopped_early;
  return r;
}

}  // namespace scm
