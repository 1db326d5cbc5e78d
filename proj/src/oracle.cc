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

#include "scm/oracle.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "scm/demand.h"
#include "scm/parallel.h"
#include "scm/search.h"

namespace scm {
namespace {

std::vector<double> Axis(const GridSpec& grid, double hi = 1.0) {
  grid.Validate();
  return UniformGrid(0.0, hi, static_cast<std::size_t>(grid.resolution));
}

}  // namespace

void GridSpec::Validate() const {
  if (resolution < 2) {
    throw std::invalid_argument("grid resolution must be at least 2");
  }
}

double OracleBestX(double theta, double t, double p, const MarketParams& params,
                   const GridSpec& grid) {
  const auto xs = Axis(grid);
  double best_x = xs[0];
  double best_u = MuUtility(xs[0], params, theta, t, p);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double u = MuUtility(xs[i], params, theta, t, p);
    if (u > best_u) {
      best_u = u;
      best_x = xs[i];
    }
  }
  return best_x;
}

OracleNashResult OracleNash(double p, const MarketParams& params,
                            const GridSpec& grid, double demand_tol,
                            int threads) {
  const auto axis = Axis(grid);
  const std::size_t n = axis.size();

  // Row i holds theta = axis[i]; column j holds t = axis[j].
  struct Row {
    std::vector<double> scsp;
    std::vector<double> eccsp;
  };
  const auto rows = ParallelMap<Row>(n, threads, [&](std::size_t i) {
    Row row{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t j = 0; j < n; ++j) {
      const double x = BestX(axis[i], axis[j], p, params, demand_tol);
      row.scsp[j] = ScspProfit(x, axis[i], p, params);
      row.eccsp[j] = EccspProfit(x, axis[j], params);
    }
    return row;
  });

  const double lowest = -std::numeric_limits<double>::infinity();
  std::vector<double> best_scsp(n, lowest);  // over theta, per t column
  std::vector<double> best_eccsp(n, lowest); // over t, per theta row
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      best_scsp[j] = std::max(best_scsp[j], rows[i].scsp[j]);
      best_eccsp[i] = std::max(best_eccsp[i], rows[i].eccsp[j]);
    }
  }

  OracleNashResult out;
  out.eps = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double gain = std::max(best_scsp[j] - rows[i].scsp[j],
                                   best_eccsp[i] - rows[i].eccsp[j]);
      if (gain < out.eps) {
        out.eps = gain;
        out.theta = axis[i];
        out.t = axis[j];
      }
    }
  }
  out.is_eps_nash = out.eps <= 0.0;
  out.eps = std::max(out.eps, 0.0);
  return out;
}

double DeviationAudit::eps() const {
  return std::max({0.0, scsp_gain, eccsp_gain});
}

DeviationAudit AuditDeviations(double theta, double t, double p,
                               const MarketParams& params,
                               const GridSpec& grid, double demand_tol) {
  const auto axis = Axis(grid);
  const double scsp_here = ScspProfitAt(theta, t, p, params, demand_tol);
  const double eccsp_here = EccspProfitAt(theta, t, p, params, demand_tol);
  DeviationAudit audit;
  audit.scsp_gain = -std::numeric_limits<double>::infinity();
  audit.eccsp_gain = -std::numeric_limits<double>::infinity();
  for (double v : axis) {
    audit.scsp_gain = std::max(
        audit.scsp_gain, ScspProfitAt(v, t, p, params, demand_tol) - scsp_here);
    audit.eccsp_gain =
        std::max(audit.eccsp_gain,
                 EccspProfitAt(theta, v, p, params, demand_tol) - eccsp_here);
  }
  return audit;
}

PricePoint OraclePrice(const MarketParams& params, const GridSpec& grid,
                       const NashOptions& options, int threads) {
  const auto prices = Axis(grid, params.p_bar);
  const auto payoffs =
      ParallelMap<double>(prices.size(), threads, [&](std::size_t i) {
        return EvaluatePrice(prices[i], params, options).second;
      });
  PricePoint best{prices[0], payoffs[0]};
  for (std::size_t i = 1; i < prices.size(); ++i) {
    if (payoffs[i] > best.payoff) best = PricePoint{prices[i], payoffs[i]};
  }
  return best;
}

}  // namespace scm
