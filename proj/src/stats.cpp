#include "satproc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satproc {

namespace {

// series expansion of P(a, x), converges for x < a + 1
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// continued fraction for Q(a, x), converges for x >= a + 1
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("regularized_gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_squared_upper_tail(double statistic, double df) {
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_q(df / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_two_sample(const std::map<std::int64_t, std::uint64_t>& a,
                                      const std::map<std::int64_t, std::uint64_t>& b,
                                      std::uint64_t min_pooled_total) {
    // merge keys, pool adjacent bins until each holds enough mass
    std::map<std::int64_t, std::pair<std::uint64_t, std::uint64_t>> merged;
    for (const auto& [key, count] : a) merged[key].first += count;
    for (const auto& [key, count] : b) merged[key].second += count;

    std::vector<std::pair<std::uint64_t, std::uint64_t>> bins;
    std::pair<std::uint64_t, std::uint64_t> acc{0, 0};
    for (const auto& [key, counts] : merged) {
        acc.first += counts.first;
        acc.second += counts.second;
        if (acc.first + acc.second >= min_pooled_total) {
            bins.push_back(acc);
            acc = {0, 0};
        }
    }
    if (acc.first + acc.second > 0) {
        if (!bins.empty()) {
            bins.back().first += acc.first;
            bins.back().second += acc.second;
        } else {
            bins.push_back(acc);
        }
    }

    ChiSquareResult result;
    result.pooled_bins = bins.size();
    if (bins.size() < 2) return result;  // degenerate: identical support, p = 1

    double total_a = 0, total_b = 0;
    for (const auto& [ca, cb] : bins) {
        total_a += static_cast<double>(ca);
        total_b += static_cast<double>(cb);
    }
    double total = total_a + total_b;
    double stat = 0.0;
    for (const auto& [ca, cb] : bins) {
        double col = static_cast<double>(ca + cb);
        double ea = col * total_a / total;
        double eb = col * total_b / total;
        double da = static_cast<double>(ca) - ea;
        double db = static_cast<double>(cb) - eb;
        stat += da * da / ea + db * db / eb;
    }
    result.statistic = stat;
    result.df = static_cast<double>(bins.size() - 1);
    result.p_value = chi_squared_upper_tail(stat, result.df);
    return result;
}

KsResult ks_test_uniform(std::vector<double> values) {
    KsResult result;
    if (values.empty()) return result;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(values[i] - lo, hi - values[i]));
    }
    result.statistic = d;
    double sqrt_n = std::sqrt(n);
    double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double term = 2.0 * ((j % 2 == 1) ? 1.0 : -1.0) *
                      std::exp(-2.0 * static_cast<double>(j) * static_cast<double>(j) * lambda * lambda);
        sum += term;
        if (std::fabs(term) < 1e-12) break;
    }
    result.p_value = std::clamp(sum, 0.0, 1.0);
    return result;
}

double binomial_pmf(std::uint64_t n, std::uint64_t k, double p) {
    if (k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    double nf = static_cast<double>(n), kf = static_cast<double>(k);
    double log_pmf = std::lgamma(nf + 1.0) - std::lgamma(kf + 1.0) - std::lgamma(nf - kf + 1.0) +
                     kf * std::log(p) + (nf - kf) * std::log1p(-p);
    return std::exp(log_pmf);
}

}  // namespace satproc
