//
// Copyright 2026 The dppm Authors
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
//

#ifndef DPPM_STATS_H_
#define DPPM_STATS_H_

#include <cstddef>
#include <functional>
#include <vector>

namespace dppm::stats {

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 1.0;
};

// Exact two-sided Clopper-Pearson interval for a binomial proportion.
ConfidenceInterval clopper_pearson(std::size_t successes, std::size_t trials,
                                   double confidence);

// Largest number of failures compatible with failure probability p over
// `trials` runs: p * trials + 3 sigma.
double binomial_slack(double p, std::size_t trials);

// Two-sided Kolmogorov-Smirnov statistic sup |F_n(x) - F(x)|. Sorts a copy.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic critical value sqrt(-ln(alpha / 2) / 2) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

double mean(const std::vector<double>& xs);
// Unbiased sample variance.
double variance(const std::vector<double>& xs);

}  // namespace dppm::stats

#endif  // DPPM_STATS_H_
