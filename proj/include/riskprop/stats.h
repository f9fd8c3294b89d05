// Copyright 2026 The RiskProp Authors
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

#ifndef RISKPROP_STATS_H_
#define RISKPROP_STATS_H_

#include <span>
#include <vector>

namespace riskprop {

// Linear-interpolation quantile (the "type 7" estimator) of unsorted data;
// q in [0, 1]. NaN for empty input.
double Quantile(std::vector<double> values, double q);
double Median(std::vector<double> values);

struct Quartiles {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  std::size_t count = 0;
};

// Non-finite values are skipped.
Quartiles ComputeQuartiles(std::span<const double> values);

// Ordinary least squares y = slope * x + intercept.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
};

LinearFit FitLine(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation with average ranks for ties.
double SpearmanRho(std::span<const double> x, std::span<const double> y);

}  // namespace riskprop

#endif  // RISKPROP_STATS_H_
