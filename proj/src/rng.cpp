#include "satproc/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace satproc {

namespace {

// log of the Stirling series remainder log(k!) - [k log k - k + 0.5 log(2 pi k)].
double stirling_correction(double k) {
    static const double table[10] = {0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
                                     0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
                                     0.01189670994589177, 0.01041126526197209, 0.009255462182712733,
                                     0.008330563433362871};
    if (k <= 9.0) return table[static_cast<int>(k)];
    double kk = (k + 1.0) * (k + 1.0);
    return (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / (1260.0 * kk)) / kk) / (k + 1.0);
}

// Inversion by repeated Bernoulli-block counting; fine while n*p is small.
std::uint64_t binomial_inversion(Rng& rng, std::uint64_t n, double p) {
    const double q = 1.0 - p;
    const double s = p / q;
    const double a = static_cast<double>(n + 1) * s;
    double r = std::pow(q, static_cast<double>(n));
    double u = uniform_double(rng);
    std::uint64_t x = 0;
    while (u > r) {
        u -= r;
        ++x;
        if (x > n) {  // numeric underflow guard; restart with a fresh uniform
            x = 0;
            r = std::pow(q, static_cast<double>(n));
            u = uniform_double(rng);
            continue;
        }
        r *= (a / static_cast<double>(x)) - s;
    }
    return x;
}

// BTRS transformed-rejection sampler (Hormann 1993), valid for n*p >= 10.
std::uint64_t binomial_btrs(Rng& rng, std::uint64_t n, double p) {
    const double nf = static_cast<double>(n);
    const double q = 1.0 - p;
    const double spq = std::sqrt(nf * p * q);
    const double b = 1.15 + 2.53 * spq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = nf * p + 0.5;
    const double v_r = 0.92 - 4.2 / b;
    const double r = p / q;
    const double alpha = (2.83 + 5.1 / b) * spq;
    const double m = std::floor((nf + 1.0) * p);

    for (;;) {
        double u = uniform_double(rng) - 0.5;
        double v = uniform_double(rng);
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + c);
        if (kf < 0.0 || kf > nf) continue;
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        v = std::log(v * alpha / (a / (us * us) + b));
        double upperbound =
            (m + 0.5) * std::log((m + 1.0) / (r * (nf - m + 1.0))) +
            (nf + 1.0) * std::log((nf - m + 1.0) / (nf - kf + 1.0)) +
            (kf + 0.5) * std::log(r * (nf - kf + 1.0) / (kf + 1.0)) +
            stirling_correction(m) + stirling_correction(nf - m) -
            stirling_correction(kf) - stirling_correction(nf - kf);
        if (v <= upperbound) return static_cast<std::uint64_t>(kf);
    }
}

}  // namespace

std::uint64_t binomial(Rng& rng, std::uint64_t n, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binomial: p outside [0,1]");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    if (p > 0.5) return n - binomial(rng, n, 1.0 - p);
    if (static_cast<double>(n) * p < 10.0) return binomial_inversion(rng, n, p);
    return binomial_btrs(rng, n, p);
}

std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t universe, std::uint64_t m) {
    if (m > universe) throw std::invalid_argument("sample_distinct: m exceeds universe size");
    std::vector<std::uint64_t> out;
    out.reserve(m);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m * 2);
    for (std::uint64_t j = universe - m; j < universe; ++j) {
        std::uint64_t t = uniform_below(rng, j + 1);
        if (seen.insert(t).second) {
            out.push_back(t);
        } else {
            seen.insert(j);
            out.push_back(j);
        }
    }
    shuffle(out, rng);
    return out;
}

}  // namespace satproc
