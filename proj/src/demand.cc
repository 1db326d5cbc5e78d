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

#include "scm/demand.h"

#include <cmath>
#include <limits>
#include <sstream>

namespace scm {
namespace {

double Quality(double t, const MarketParams& params) {
  return std::pow(t, 1.0 - params.beta) / (1.0 - params.beta);
}

double Rhs(double theta, double p, const MarketParams& params) {
  return ((1.0 - theta) * p - params.c_handover) /
         (params.tau() * params.sigma_e);
}

void RequireStrategies(double theta, double t, double p,
                       const MarketParams& params) {
  std::ostringstream os;
  if (!(theta >= 0.0 && theta <= 1.0)) {
    os << "theta must lie in [0,1] (got " << theta << ")";
  } else if (!(t >= 0.0 && t <= 1.0)) {
    os << "caching effort must lie in [0,1] (got " << t << ")";
  } else if (!(p >= 0.0 && p <= params.p_bar)) {
    os << "price must lie in [0, p_bar] (got " << p << ")";
  } else {
    return;
  }
  throw DomainError(os.str());
}

}  // namespace

const char* ToString(DemandRegime regime) {
  switch (regime) {
    case DemandRegime::kInterior: return "interior";
    case DemandRegime::kClampedLow: return "clamped_low";
    case DemandRegime::kClampedHigh: return "clamped_high";
  }
  return "unknown";
}

double DemandResidual(double x, double theta, double t, double p,
                      const MarketParams& params) {
  const double a = params.alpha;
  return std::pow(x, -a) - Quality(t, params) * std::pow(1.0 - x, -a) -
         Rhs(theta, p, params);
}

DemandSolution BestResponseX(double theta, double t, double p,
                             const MarketParams& params, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  RequireStrategies(theta, t, p, params);

  const double a = params.alpha;
  const double rhs = Rhs(theta, p, params);
  DemandSolution sol;

  if (t == 0.0) {
    // x^-a >= 1 on (0,1]: the optimum is interior only when rhs > 1.
    if (rhs > 1.0) {
      sol.x_star = std::pow(rhs, -1.0 / a);
      sol.residual = std::pow(sol.x_star, -a) - rhs;
    } else {
      sol.x_star = 1.0;
      sol.boundary = DemandRegime::kClampedHigh;
      sol.residual = 1.0 - rhs;
    }
    return sol;
  }

  const double quality = Quality(t, params);
  auto residual = [&](double x) {
    return std::pow(x, -a) - quality * std::pow(1.0 - x, -a) - rhs;
  };
  auto slope = [&](double x) {
    return -a * std::pow(x, -a - 1.0) -
           a * quality * std::pow(1.0 - x, -a - 1.0);
  };

  double lo = kDemandBracketEps;
  double hi = 1.0 - kDemandBracketEps;
  const double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (f_lo <= 0.0) {
    sol.x_star = 0.0;
    sol.boundary = DemandRegime::kClampedLow;
    sol.residual = f_lo;
    return sol;
  }
  if (f_hi >= 0.0) {
    sol.x_star = 1.0;
    sol.boundary = DemandRegime::kClampedHigh;
    sol.residual = f_hi;
    return sol;
  }

  double x = 0.5;
  double step_before_last = hi - lo;
  double last_step = step_before_last;
  for (int it = 1; it <= kDemandMaxIterations; ++it) {
    const double fx = residual(x);
    sol.iterations = it;
    if (std::abs(fx) <= tol) {
      sol.x_star = x;
      sol.residual = fx;
      return sol;
    }
    // F is decreasing: positive residual means the root lies to the right.
    if (fx > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      // Bracket collapsed to rounding level; the root is pinned.
      sol.x_star = std::abs(residual(lo)) < std::abs(residual(hi)) ? lo : hi;
      sol.residual = residual(sol.x_star);
      return sol;
    }
    const double dfx = slope(x);
    const double newton = x - fx / dfx;
    const bool inside = newton > lo && newton < hi;
    const bool slow = std::abs(2.0 * fx) > std::abs(step_before_last * dfx);
    step_before_last = last_step;
    if (!inside || slow) {
      last_step = 0.5 * (hi - lo);
      x = lo + last_step;
    } else {
      last_step = std::abs(newton - x);
      x = newton;
    }
  }
  std::ostringstream os;
  os << "demand root finder did not converge in " << kDemandMaxIterations
     << " iterations; bracket [" << lo << ", " << hi << "]";
  throw ConvergenceError(os.str(), lo, hi);
}

double BestX(double theta, double t, double p, const MarketParams& params,
             double tol) {
  return BestResponseX(theta, t, p, params, tol).x_star;
}

DemandSensitivities Sensitivities(double x, double theta, double t, double p,
                                  const MarketParams& params) {
  if (!(x > 0.0 && x < 1.0)) {
    std::ostringstream os;
    os << "sensitivities are singular at x = " << x;
    throw DomainError(os.str());
  }
  RequireStrategies(theta, t, p, params);
  const double a = params.alpha;
  const double ts = params.tau() * params.sigma_e;
  const double quality = Quality(t, params);
  const double y = 1.0 - x;

  // Curvature of the first-order condition and its x-derivative / (a+1).
  const double denom = std::pow(x, -a - 1.0) + quality * std::pow(y, -a - 1.0);
  const double bend = -std::pow(x, -a - 2.0) + quality * std::pow(y, -a - 2.0);

  DemandSensitivities s;
  s.dx_dtheta = p / (a * ts * denom);
  s.d2x_dtheta2 = bend * (-(a + 1.0) * p * p) /
                  (a * a * ts * ts * denom * denom * denom);

  if (t == 0.0) {
    s.dx_dt = std::numeric_limits<double>::quiet_NaN();
    s.d2x_dt2 = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const double push = std::pow(t, -params.beta) * std::pow(y, -a);
  s.dx_dt = -push / (a * denom);
  const double braces =
      2.0 * std::pow(t, -params.beta) * std::pow(y, -a - 1.0) / denom +
      params.beta / t - (a + 1.0) * push * bend / (a * denom * denom);
  s.d2x_dt2 = push / (a * denom) * braces;
  return s;
}

}  // namespace scm
