// Copyright 2026 The jcmsim Authors
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

#ifndef JCMSIM_FIT_HPP
#define JCMSIM_FIT_HPP

#include <span>
#include <stdexcept>

namespace jcmsim {

struct FitWindow {
  double lo = 0.0;  // t/T, inclusive
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct SeriesPoint {
  double t_over_T = 0.0;
  double fidelity = 0.0;
  double stderr_fidelity = 0.0;
  /// Used instead of 1 - F when set (> 0); the engine accumulates it directly.
  double one_minus_fidelity = 0.0;
};

/// ln(1 - F) = a + b ln(t/T) over a window.
struct FitResult {
  double a = 0.0;
  double b = 0.0;
  FitWindow window;
  int n_points = 0;
  int n_excluded = 0;  // in window but 1 - F <= 0
  double rms = 0.0;
  double stderr_a = 0.0;
  double stderr_b = 0.0;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitOptions {
  /// Weight points by 1/sigma^2 with sigma = stderr_F / (1 - F).
  bool weighted = false;
};

/// Least squares over the points of `series` inside `window`. Points with
/// F >= 1 are dropped and counted. Throws FitError with fewer than 2 left
/// or lo >= hi.
FitResult loglog_fit(std::span<const SeriesPoint> series, FitWindow window, const FitOptions& options = {});

struct InterceptShift {
  double value = 0.0;
  double stderr_value = 0.0;
};

inline constexpr double kSlopeTolerance = 0.1;

/// second.a - first.a. Throws FitError unless windows match and the slopes
/// agree within kSlopeTolerance.
InterceptShift intercept_shift(const FitResult& first, const FitResult& second);

}  // namespace jcmsim

#endif  // JCMSIM_FIT_HPP
