#pragma once

#include <span>
#include <string>
#include <vector>

namespace rcs {

/// Pairwise (cascade) summation: the result depends only on the values and
/// their order, not on how the work was split across workers.
double pairwise_sum(std::span<const double> values);

struct MomentsEstimate {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double se = 0.0;        // sqrt(variance / count)
  double skewness = 0.0;  // standardized third moment
};

MomentsEstimate estimate_moments(std::span<const double> values);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Quantile of the chi-square distribution with df degrees of freedom.
double chi2_quantile(double prob, int df);

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double threshold = 0.0;  // quantile at 1 - significance
  bool pass = false;
  std::string detail;
};

/// Goodness-of-fit test of observed counts against exact cell probabilities.
ChiSquareResult chi_square_gof(std::span<const long long> observed,
                               std::span<const double> expected_probs, long long total,
                               double significance);

/// Two-sample chi-square homogeneity test on matched count vectors.
ChiSquareResult chi_square_two_sample(std::span<const long long> counts_a,
                                      std::span<const long long> counts_b,
                                      double significance);

}  // namespace rcs
