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

#ifndef SCM_ORACLE_H_
#define SCM_ORACLE_H_

// Exhaustive grid references for the three stage solvers. Nothing here is
// clever on purpose: every candidate on a uniform grid is evaluated and the
// first maximiser in grid order wins.

#include "scm/market.h"
#include "scm/nash.h"
#include "scm/pricing.h"

namespace scm {

// Number of uniformly spaced points per axis, endpoints included.
struct GridSpec {
  int resolution = 1001;

  // Throws std::invalid_argument when resolution < 2.
  void Validate() const;
};

// Grid maximiser of the MU utility over x in [0,1].
double OracleBestX(double theta, double t, double p, const MarketParams& params,
                   const GridSpec& grid = {});

struct OracleNashResult {
  double theta = 0.0;
  double t = 0.0;
  // True when (theta, t) are mutual grid best responses.
  bool is_eps_nash = false;
  // Largest unilateral grid improvement available at (theta, t).
  double eps = 0.0;
};

// Scans the full (theta, t) grid with x* solved at full precision and returns
// the profile with the smallest maximal unilateral improvement.
OracleNashResult OracleNash(double p, const MarketParams& params,
                            const GridSpec& grid = {201},
                            double demand_tol = kDemandTolerance,
                            int threads = 1);

struct DeviationAudit {
  double scsp_gain = 0.0;   // best grid theta' profit minus profit at theta
  double eccsp_gain = 0.0;  // best grid t' profit minus profit at t
  double eps() const;       // max(0, scsp_gain, eccsp_gain)
};

// Unilateral deviation scan around a given provider profile.
DeviationAudit AuditDeviations(double theta, double t, double p,
                               const MarketParams& params,
                               const GridSpec& grid = {},
                               double demand_tol = kDemandTolerance);

// Grid maximiser of the nested WNO payoff over [0, p_bar], each lower level
// solved by SolveNash.
PricePoint OraclePrice(const MarketParams& params, const GridSpec& grid = {101},
                       const NashOptions& options = {}, int threads = 1);

}  // namespace scm

#endif  // SCM_ORACLE_H_
