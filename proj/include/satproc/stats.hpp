#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace satproc {

/// Regularized upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);

/// Upper tail of the chi-squared distribution with df degrees of freedom.
double chi_squared_upper_tail(double statistic, double df);

struct ChiSquareResult {
    double statistic = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    std::size_t pooled_bins = 0;
};

/// Two-sample chi-square homogeneity test over integer-keyed histograms.
/// Adjacent keys are pooled until each pooled bin holds at least
/// min_pooled_total observations across both samples.
ChiSquareResult chi_square_two_sample(const std::map<std::int64_t, std::uint64_t>& a,
                                      const std::map<std::int64_t, std::uint64_t>& b,
                                      std::uint64_t min_pooled_total = 20);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// One-sample Kolmogorov-Smirnov test against Uniform[0,1].
KsResult ks_test_uniform(std::vector<double> values);

/// Exact Binomial(n, p) point mass via log-gamma.
double binomial_pmf(std::uint64_t n, std::uint64_t k, double p);

}  // namespace satproc
