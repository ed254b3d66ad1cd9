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

#ifndef JCMSIM_STATS_HPP
#define JCMSIM_STATS_HPP

#include <cmath>
#include <cstdint>

namespace jcmsim {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.compensation_);
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Mean and standard error of the mean from compensated sums of (x - shift)
/// and (x - shift)^2. A shift close to the typical value keeps the variance
/// free of cancellation; accumulators merge only with equal shifts.
struct MeanAccumulator {
  double shift = 0.0;
  CompensatedSum sum;
  CompensatedSum sum_sq;
  std::int64_t count = 0;

  MeanAccumulator() = default;
  explicit MeanAccumulator(double shift_value) : shift(shift_value) {}

  void add(double x) {
    const double d = x - shift;
    sum.add(d);
    sum_sq.add(d * d);
    ++count;
  }

  void merge(const MeanAccumulator& other) {
    sum.merge(other.sum);
    sum_sq.merge(other.sum_sq);
    count += other.count;
  }

  /// Mean of x - shift.
  double shifted_mean() const { return count > 0 ? sum.value() / static_cast<double>(count) : 0.0; }
  double mean() const { return shift + shifted_mean(); }

  /// Sample standard deviation / sqrt(count); zero for fewer than two samples.
  double standard_error() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    const double m = shifted_mean();
    const double var = (sum_sq.value() / n - m * m) * n / (n - 1.0);
    return var > 0.0 ? std::sqrt(var / n) : 0.0;
  }
};

}  // namespace jcmsim

#endif  // JCMSIM_STATS_HPP
