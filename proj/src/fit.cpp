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

#include "jcmsim/fit.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace jcmsim {

FitResult loglog_fit(std::span<const SeriesPoint> series, FitWindow window, const FitOptions& options) {
  if (!(window.lo < window.hi)) {
    throw FitError("fit window needs lo < hi");
  }
  FitResult out;
  out.window = window;
  std::vector<double> xs, ys, ws;
  for (const auto& pt : series) {
    if (!window.contains(pt.t_over_T)) continue;
    const double deficit = pt.one_minus_fidelity > 0.0 ? pt.one_minus_fidelity : 1.0 - pt.fidelity;
    if (!(deficit > 0.0) || !(pt.t_over_T > 0.0)) {
      ++out.n_excluded;
      continue;
    }
    xs.push_back(std::log(pt.t_over_T));
    ys.push_back(std::log(deficit));
    double w = 1.0;
    if (options.weighted) {
      const double sigma = pt.stderr_fidelity / deficit;
      w = sigma > 0.0 ? 1.0 / (sigma * sigma) : 1.0;
    }
    ws.push_back(w);
  }
  const auto n = static_cast<Eigen::Index>(xs.size());
  if (n < 2) {
    throw FitError("log-log fit needs at least 2 points with F < 1 in the window");
  }
  out.n_points = static_cast<int>(n);

  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n), sw(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sw(i) = std::sqrt(ws[static_cast<std::size_t>(i)]);
    A(i, 0) = sw(i);
    A(i, 1) = sw(i) * xs[static_cast<std::size_t>(i)];
    y(i) = sw(i) * ys[static_cast<std::size_t>(i)];
  }
  const auto qr = A.colPivHouseholderQr();
  if (qr.rank() < 2) {
    throw FitError("log-log fit is degenerate: all points share one t/T");
  }
  const Eigen::Vector2d coef = qr.solve(y);
  out.a = coef(0);
  out.b = coef(1);

  const Eigen::VectorXd resid = y - A * coef;
  double raw_ss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = resid(i) / sw(i);
    raw_ss += r * r;
  }
  out.rms = std::sqrt(raw_ss / static_cast<double>(n));
  if (n > 2) {
    const double s2 = resid.squaredNorm() / static_cast<double>(n - 2);
    const Eigen::Matrix2d cov = s2 * (A.transpose() * A).inverse();
    out.stderr_a = std::sqrt(cov(0, 0));
    out.stderr_b = std::sqrt(cov(1, 1));
  }
  return out;
}

InterceptShift intercept_shift(const FitResult& first, const FitResult& second) {
  if (first.window.lo != second.window.lo || first.window.hi != second.window.hi) {
    throw FitError("intercept shift needs fits over the same window");
  }
  if (std::abs(first.b - second.b) > kSlopeTolerance) {
    throw FitError("intercept shift needs slopes within 0.1");
  }
  return {second.a - first.a, std::hypot(first.stderr_a, second.stderr_a)};
}

}  // namespace jcmsim
