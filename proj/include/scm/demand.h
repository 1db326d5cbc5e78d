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

#ifndef SCM_DEMAND_H_
#define SCM_DEMAND_H_

// Stage III: the MU's best response x*(theta, t, p) and its sensitivities.
//
// Interior optima satisfy the first-order condition
//
//   F(x) = x^-a - g(t) (1-x)^-a - ((1-theta) p - c) / (tau sigma_e) = 0,
//
// where F is strictly decreasing on (0,1). For t > 0 it runs from +inf to
// -inf, so the root exists and is unique. For t = 0 the cached term
// disappears and x* has a closed form, clamped at 1 when the right-hand side
// drops below one.

#include <stdexcept>

#include "scm/market.h"

namespace scm {

inline constexpr double kDemandTolerance = 1e-10;
inline constexpr int kDemandMaxIterations = 200;
// Root bracket is [eps, 1 - eps].
inline constexpr double kDemandBracketEps = 1e-12;

enum class DemandRegime { kInterior, kClampedLow, kClampedHigh };

const char* ToString(DemandRegime regime);

struct DemandSolution {
  double x_star = 0.0;
  DemandRegime boundary = DemandRegime::kInterior;
  double residual = 0.0;  // F(x_star)
  int iterations = 0;
};

// Raised when the root finder exhausts its iteration budget. Carries the best
// bracket found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

// The first-order residual F(x) for x in (0,1).
double DemandResidual(double x, double theta, double t, double p,
                      const MarketParams& params);

// Solves F(x) = 0 with a safeguarded Newton/bisection iteration. Roots closer
// than kDemandBracketEps to an end of [0,1] are reported as clamped there.
// Throws std::invalid_argument for tol <= 0 and DomainError for strategies
// outside their boxes.
DemandSolution BestResponseX(double theta, double t, double p,
                             const MarketParams& params,
                             double tol = kDemandTolerance);

// Shorthand for BestResponseX(...).x_star.
double BestX(double theta, double t, double p, const MarketParams& params,
             double tol = kDemandTolerance);

// Implicit derivatives of x* with respect to theta and t, evaluated in closed
// form at an interior x*. The t-derivatives are NaN at t = 0 where t^-beta is
// unbounded.
struct DemandSensitivities {
  double dx_dtheta = 0.0;
  double d2x_dtheta2 = 0.0;
  double dx_dt = 0.0;
  double d2x_dt2 = 0.0;
};

// Throws DomainError when x_star is not strictly inside (0,1).
DemandSensitivities Sensitivities(double x_star, double theta, double t,
                                  double p, const MarketParams& params);

}  // namespace scm

#endif  // SCM_DEMAND_H_
