#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace collatz {

/// Step counts from repeated random experiments at one digit size.
struct SampleSet {
  std::size_t digits = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;
};

struct KsResult {
  double statistic = 0.0;
  double p_approx = 1.0;  // asymptotic Kolmogorov tail; parameters were estimated
};

/// Unset optionals mean "undefined for this sample" (too small or zero
/// variance), never NaN.
struct ExperimentSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;                  // n - 1 denominator
  std::optional<double> skewness;    // population g1 = m3 / m2^1.5
  std::optional<double> kurtosis;    // population m4 / m2^2, not excess
  std::optional<double> ks_statistic;
  std::optional<double> ks_p_approx;
  double model_mean = 0.0;
  double mean_over_model = 0.0;
};

/// digits * ln 10 / ln(2 / sqrt 3); 0 for digits = 0.
double expected_steps_model(std::size_t digits);

/// Standard normal CDF.
double normal_cdf(double z);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_tail(double lambda);

/// Two-sided KS distance between the sample and a normal with the sample's
/// mean and (n - 1) standard deviation.  No minimum size; throws on n < 2 or
/// zero variance.
KsResult ks_against_fitted_normal(std::span<const double> values);

/// KS normality check for a step-count sample; requires n >= 8.
KsResult ks_normal(const SampleSet& samples);

/// Moment summary of arbitrary reals; model fields are left at zero.
ExperimentSummary summarize(std::span<const double> values);

/// Summary of a SampleSet including the model comparison.  Requires n >= 2.
ExperimentSummary summary_stats(const SampleSet& samples);

}  // namespace collatz
