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

#include "scm/nash.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scm/search.h"

namespace scm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Maximises a profit over [0,1]: coarse scan, golden section inside the best
// scan cell, then bisection on the analytic marginal profit when the
// maximiser is interior. Ties resolve to the smallest maximiser.
template <typename Profit, typename Marginal>
BestResponse MaximizeOnUnit(const Profit& profit, const Marginal& marginal,
                            const ResponseOptions& options) {
  const int n = std::max(options.scan_points, 2);
  const auto scan = UniformGrid(0.0, 1.0, static_cast<std::size_t>(n));
  int best = 0;
  double best_value = profit(scan[0]);
  for (int i = 1; i < n; ++i) {
    const double v = profit(scan[i]);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  const double lo = scan[std::max(best - 1, 0)];
  const double hi = scan[std::min(best + 1, n - 1)];
  double candidate = GoldenSectionMaximize(profit, lo, hi, options.tol);

  // Golden section cannot resolve a flat maximum below ~sqrt(eps); pin the
  // root of the marginal profit instead.
  for (double half = 1e-6; half <= 1e-3; half *= 10.0) {
    const double a = std::max(0.0, candidate - half);
    const double b = std::min(1.0, candidate + half);
    if (marginal(a).first > 0.0 && marginal(b).first < 0.0) {
      candidate = BisectDecreasing(
          [&](double v) { return marginal(v).first; }, a, b, 1e-14);
      break;
    }
  }

  BestResponse out{0.0, profit(0.0), true};
  for (double v : {candidate, 1.0}) {
    const double value = profit(v);
    if (value > out.profit) out = BestResponse{v, value, true};
  }

  if (out.value > 0.0 && out.value < 1.0 && marginal(out.value).second > 0.0) {
    const auto fine = UniformGrid(
        0.0, 1.0, static_cast<std::size_t>(std::max(options.fallback_points, 2)));
    out = BestResponse{fine[0], profit(fine[0]), false};
    for (std::size_t i = 1; i < fine.size(); ++i) {
      const double value = profit(fine[i]);
      if (value > out.profit) out = BestResponse{fine[i], value, false};
    }
  }
  return out;
}

}  // namespace

double ScspProfitAt(double theta, double t, double p,
                    const MarketParams& params, double demand_tol) {
  const double x = BestX(theta, t, p, params, demand_tol);
  return ScspProfit(x, theta, p, params);
}

double EccspProfitAt(double theta, double t, double p,
                     const MarketParams& params, double demand_tol) {
  const double x = BestX(theta, t, p, params, demand_tol);
  return EccspProfit(x, t, params);
}

ProfitDerivatives ScspProfitDerivatives(double theta, double t, double p,
                                        const MarketParams& params,
                                        double demand_tol) {
  const double x = BestX(theta, t, p, params, demand_tol);
  if (!(x > 0.0 && x < 1.0)) return {kNaN, kNaN};
  const auto s = Sensitivities(x, theta, t, p, params);
  const double g = params.gamma;
  const double sc = params.sigma_c;
  ProfitDerivatives d;
  d.first = sc * std::pow(x, -g) * s.dx_dtheta - p * x - theta * p * s.dx_dtheta;
  d.second = -g * sc * std::pow(x, -g - 1.0) * s.dx_dtheta * s.dx_dtheta +
             sc * std::pow(x, -g) * s.d2x_dtheta2 - 2.0 * p * s.dx_dtheta -
             theta * p * s.d2x_dtheta2;
  return d;
}

ProfitDerivatives EccspProfitDerivatives(double theta, double t, double p,
                                         const MarketParams& params,
                                         double demand_tol) {
  const double x = BestX(theta, t, p, params, demand_tol);
  if (!(x > 0.0 && x < 1.0) || t == 0.0) return {kNaN, kNaN};
  const auto s = Sensitivities(x, theta, t, p, params);
  const double g = params.gamma;
  const double sc = params.sigma_c;
  const double y = 1.0 - x;
  ProfitDerivatives d;
  // Revenue depends on the cached share 1 - x*, whose t-derivative is -dx/dt.
  d.first = -sc * std::pow(y, -g) * s.dx_dt - params.C_cache;
  d.second = -g * sc * std::pow(y, -g - 1.0) * s.dx_dt * s.dx_dt -
             sc * std::pow(y, -g) * s.d2x_dt2;
  return d;
}

BestResponse ScspBestResponse(double t, double p, const MarketParams& params,
                              const ResponseOptions& options) {
  const double dtol = options.demand_tol;
  return MaximizeOnUnit(
      [&](double theta) { return ScspProfitAt(theta, t, p, params, dtol); },
      [&](double theta) {
        return ScspProfitDerivatives(theta, t, p, params, dtol);
      },
      options);
}

BestResponse EccspBestResponse(double theta, double p,
                               const MarketParams& params,
                               const ResponseOptions& options) {
  const double dtol = options.demand_tol;
  return MaximizeOnUnit(
      [&](double t) { return EccspProfitAt(theta, t, p, params, dtol); },
      [&](double t) {
        return EccspProfitDerivatives(theta, t, p, params, dtol);
      },
      options);
}

NashSolution SolveNash(double p, const MarketParams& params,
                       const NashOptions& options) {
  NashSolution sol;
  sol.price = p;
  double theta = std::clamp(options.initial_theta, 0.0, 1.0);
  double t = std::clamp(options.initial_t, 0.0, 1.0);
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    const BestResponse scsp = ScspBestResponse(t, p, params, options.response);
    const BestResponse eccsp =
        EccspBestResponse(scsp.value, p, params, options.response);
    sol.last_change =
        std::max(std::abs(scsp.value - theta), std::abs(eccsp.value - t));
    theta = scsp.value;
    t = eccsp.value;
    sol.sweeps = sweep;
    sol.nonconcave_response = !scsp.concave || !eccsp.concave;
    if (sol.last_change <= options.tol) {
      sol.converged = true;
      break;
    }
  }
  sol.theta_star = theta;
  sol.t_star = t;
  sol.x_star = BestX(theta, t, p, params, options.response.demand_tol);
  sol.scsp_profit = ScspProfit(sol.x_star, theta, p, params);
  sol.eccsp_profit = EccspProfit(sol.x_star, t, params);
  sol.conditions = CheckConditions(sol.Profile(), params);
  return sol;
}

}  // namespace scm
