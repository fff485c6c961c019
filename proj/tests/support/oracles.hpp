// Copyright 2026 The ctlcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only oracles. These deliberately re-derive results through
// independent routes (direct scans, quadrature, bisection) so library
// regressions cannot hide behind shared code.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace oracles {

// The reference curve used throughout: unit step of an underdamped
// second-order output at damping 0.2 and unit natural frequency, written
// with explicit radicals rather than the library's parametric form.
inline double reference_curve(double t) {
  const double s6 = std::sqrt(6.0);
  return 1.0 - std::exp(-t / 5.0) *
                   (s6 * std::cos(2.0 * s6 * t / 5.0) +
                    3.0 * std::sin(2.0 * s6 * t / 5.0)) /
                   s6;
}

// Direct infimum computation of the epsilon-settling time on a sampled
// error sequence: the smallest k*tau such that every error from k on is
// strictly below epsilon. No labeling, no rewards.
inline double forward_scan_settling(const std::vector<double>& errors,
                                    double epsilon, double tau) {
  std::optional<std::size_t> last_violation;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!(errors[k] < epsilon)) last_violation = k;
  }
  if (!last_violation) return 0.0;
  if (*last_violation == errors.size() - 1) {
    return std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(*last_violation + 1) * tau;
}

// Composite Simpson quadrature with n (forced even) intervals.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, std::size_t n) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) {
    sum += f(a + static_cast<double>(i) * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// Largest t in (0, hi] with f(t) >= level, refined by bisection from a
// downward scan. Returns nullopt when the level is never reached.
inline std::optional<double> last_crossing(
    const std::function<double(double)>& f, double level, double hi,
    double scan_step, int iterations = 200) {
  double t = hi;
  while (t > 0.0 && f(t) < level) t -= scan_step;
  if (t <= 0.0) return std::nullopt;
  double lo = t;
  double up = std::min(t + scan_step, hi);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + up);
    if (f(mid) >= level) {
      lo = mid;
    } else {
      up = mid;
    }
  }
  return 0.5 * (lo + up);
}

}  // namespace oracles
