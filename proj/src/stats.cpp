#include "collatz/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace collatz {

namespace {

constexpr std::size_t kMinKsSize = 8;

std::vector<double> as_doubles(const SampleSet& samples) {
  std::vector<double> values;
  values.reserve(samples.counts.size());
  for (const auto c : samples.counts) values.push_back(static_cast<double>(c));
  return values;
}

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

double expected_steps_model(std::size_t digits) {
  const double log_shrink = std::numbers::ln2 - 0.5 * std::log(3.0);
  return static_cast<double>(digits) * std::numbers::ln10 / log_shrink;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  // The alternating series converges slowly for small lambda, where the
  // tail is 1 to double precision anyway.
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

ExperimentSummary summarize(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw std::invalid_argument("summary needs at least 2 samples, got " + std::to_string(n));
  }
  ExperimentSummary s;
  s.n = n;
  s.mean = mean_of(values);

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (const double v : values) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double nd = static_cast<double>(n);
  s.std = std::sqrt(m2 / (nd - 1.0));
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;

  if (m2 > 0.0 && n >= 3) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
  }
  if (m2 > 0.0 && n >= kMinKsSize) {
    const KsResult ks = ks_against_fitted_normal(values);
    s.ks_statistic = ks.statistic;
    s.ks_p_approx = ks.p_approx;
  }
  return s;
}

KsResult ks_against_fitted_normal(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("KS test needs at least 2 samples");
  const double mean = mean_of(values);
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw std::invalid_argument("KS test: sample has zero variance");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double nd = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = normal_cdf((sorted[i] - mean) / sd);
    d = std::max({d, static_cast<double>(i + 1) / nd - f, f - static_cast<double>(i) / nd});
  }
  return {d, kolmogorov_tail(std::sqrt(nd) * d)};
}

KsResult ks_normal(const SampleSet& samples) {
  if (samples.counts.size() < kMinKsSize) {
    throw std::invalid_argument("KS test needs at least " + std::to_string(kMinKsSize) +
                                " samples, got " + std::to_string(samples.counts.size()));
  }
  const auto values = as_doubles(samples);
  return ks_against_fitted_normal(values);
}

ExperimentSummary summary_stats(const SampleSet& samples) {
  const auto values = as_doubles(samples);
  ExperimentSummary s = summarize(values);
  s.model_mean = expected_steps_model(samples.digits);
  s.mean_over_model = s.model_mean > 0.0 ? s.mean / s.model_mean : 0.0;
  return s;
}

}  // namespace collatz
