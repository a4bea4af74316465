// Copyright 2026 The synthvol Authors
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

#ifndef SYNTHVOL_GOF_HPP_
#define SYNTHVOL_GOF_HPP_

#include <cstdint>
#include <span>

namespace synthvol {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// One-sample Kolmogorov-Smirnov test against Uniform(lo, hi). The p-value
/// uses the asymptotic Kolmogorov distribution with Stephens' small-sample
/// correction.
TestResult ks_uniform(std::span<const double> values, double lo, double hi);

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

/// Pearson chi-square test of observed category counts against equal
/// expected frequencies (df = categories - 1).
TestResult chi_square_uniform(std::span<const std::int64_t> counts);

}  // namespace synthvol

#endif  // SYNTHVOL_GOF_HPP_
