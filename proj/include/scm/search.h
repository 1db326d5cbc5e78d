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

#ifndef SCM_SEARCH_H_
#define SCM_SEARCH_H_

// One-dimensional search primitives shared by the stage solvers.

#include <cmath>
#include <cstddef>
#include <vector>

namespace scm {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// Golden-section maximisation of f on [lo, hi]. On equal values the left
// section is kept, so flat objectives drift to the smallest maximiser.
// Stops when the bracket is narrower than `width` or after `max_iterations`.
template <typename F>
double GoldenSectionMaximize(F&& f, double lo, double hi, double width,
                             int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && hi - lo > width; ++i) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

// Bisection for a root of a function that is positive at lo and negative at
// hi. Returns the midpoint of the final bracket.
template <typename F>
double BisectDecreasing(F&& f, double lo, double hi, double width,
                        int max_iterations = 200) {
  for (int i = 0; i < max_iterations && hi - lo > width; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// n uniformly spaced points covering [lo, hi] inclusive; the last point is hi
// exactly.
inline std::vector<double> UniformGrid(double lo, double hi, std::size_t n) {
  std::vector<double> grid(n);
  if (n == 1) {
    grid[0] = lo;
    return grid;
  }
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(n - 1);
  }
  grid.back() = hi;
  return grid;
}

}  // namespace scm

#endif  // SCM_SEARCH_H_
