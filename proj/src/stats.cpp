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

#include "neraudit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "neraudit/errors.hpp"

namespace neraudit {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double incbeta_cf(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIter = 300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw Error("incomplete beta continued fraction did not converge");
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double mean_of(std::span<const double> v) {
  double sum = 0.0;
  for (const double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double sample_sd_of(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

RunSummary aggregate(std::span<const double> values) {
  if (values.empty()) throw Error("aggregate requires at least one value");
  RunSummary out;
  out.n = values.size();
  out.mean = mean_of(values);
  out.min = *std::min_element(values.begin(), values.end());
  out.max = *std::max_element(values.begin(), values.end());
  if (values.size() >= 2) out.sample_sd = sample_sd_of(values, out.mean);
  return out;
}

TTestResult paired_t_test(std::span<const double> a,
                          std::span<const double> b) {
  if (a.size() != b.size()) {
    throw AlignmentError("length mismatch: a has " + std::to_string(a.size()) +
                         " values, b has " + std::to_string(b.size()));
  }
  if (a.size() < 2) throw Error("paired t-test requires at least two pairs");

  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double mean = mean_of(d);
  const double sd = sample_sd_of(d, mean);

  TTestResult out;
  out.degrees_of_freedom = static_cast<std::int64_t>(d.size()) - 1;
  if (sd == 0.0) {
    if (mean == 0.0) return out;  // no difference anywhere: t = 0, p = 1
    throw DegenerateVarianceError(
        "differences have zero variance; the t statistic is undefined");
  }
  out.t_statistic = mean / (sd / std::sqrt(static_cast<double>(d.size())));
  const double df = static_cast<double>(out.degrees_of_freedom);
  out.p_two_tailed = 2.0 * (1.0 - student_t_cdf(std::fabs(out.t_statistic), df));
  out.p_two_tailed = std::clamp(out.p_two_tailed, 0.0, 1.0);
  return out;
}

double delta(double reported, double obtained) { return reported - obtained; }

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0) || std::isnan(x)) {
    throw Error("regularized_incomplete_beta requires a > 0, b > 0");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  // The continued fraction converges fastest below the distribution mode;
  // above it, use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * incbeta_cf(x, a, b) / a;
  }
  return 1.0 - front * incbeta_cf(1.0 - x, b, a) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw Error("student_t_cdf requires df > 0");
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(x, df / 2.0, 0.5);
  return t > 0.0 ? 1.0 - tail : tail;
}

}  // namespace neraudit
