// Copyright 2026 The neraudit Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace neraudit {

struct RunSummary {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sample_sd;  // n-1 denominator; absent when n == 1
  double min = 0.0;
  double max = 0.0;
};

// Mean / sample standard deviation / min / max over at least one value.
RunSummary aggregate(std::span<const double> values);

struct TTestResult {
  double t_statistic = 0.0;
  std::int64_t degrees_of_freedom = 0;
  double p_two_tailed = 1.0;
};

// Two-tailed paired t-test on a_i - b_i. All-zero differences give t = 0,
// p = 1; identical nonzero differences throw DegenerateVarianceError.
TTestResult paired_t_test(std::span<const double> a,
                          std::span<const double> b);

// reported - obtained, for reported-vs-obtained tables.
double delta(double reported, double obtained);

// I_x(a, b), evaluated by continued fraction to ~1e-15 absolute accuracy.
double regularized_incomplete_beta(double x, double a, double b);

// CDF of Student's t with df degrees of freedom; exactly 0.5 at t = 0.
double student_t_cdf(double t, double df);

}  // namespace neraudit
