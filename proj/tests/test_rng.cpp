#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "satproc/rng.hpp"

using namespace satproc;

TEST_CASE("xoshiro stream is deterministic per seed") {
    Rng a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) {
        std::uint64_t x = a.next();
        CHECK(x == b.next());
    }
    bool differs = false;
    Rng a2(42);
    for (int i = 0; i < 10; ++i) differs = differs || (a2.next() != c.next());
    CHECK(differs);
}

TEST_CASE("derive_seed separates streams") {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t g = 0; g < 10; ++g)
        for (std::uint64_t t = 0; t < 10; ++t) seeds.insert(derive_seed(7, g, t));
    CHECK(seeds.size() == 100);
    CHECK(derive_seed(7, 1, 2) == derive_seed(7, 1, 2));
    CHECK(derive_seed(7, 1, 2) != derive_seed(8, 1, 2));
}

TEST_CASE("uniform_below stays in range and covers values") {
    Rng rng(1);
    std::vector<int> seen(17, 0);
    for (int i = 0; i < 20000; ++i) {
        std::uint64_t x = uniform_below(rng, 17);
        REQUIRE(x < 17);
        ++seen[x];
    }
    for (int count : seen) CHECK(count > 0);
}

TEST_CASE("shuffle yields a permutation") {
    Rng rng(5);
    std::vector<int> v(100);
    std::iota(v.begin(), v.end(), 0);
    shuffle(v, rng);
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 100; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("sample_distinct draws distinct values, full range at m = universe") {
    Rng rng(9);
    auto sample = sample_distinct(rng, 1000, 50);
    std::set<std::uint64_t> unique(sample.begin(), sample.end());
    CHECK(unique.size() == 50);
    for (auto v : sample) CHECK(v < 1000);

    auto all = sample_distinct(rng, 64, 64);
    std::set<std::uint64_t> full(all.begin(), all.end());
    CHECK(full.size() == 64);
}

TEST_CASE("binomial sampling matches mean and variance") {
    Rng rng(11);
    SUBCASE("small mean path") {
        double sum = 0;
        const int trials = 20000;
        for (int i = 0; i < trials; ++i) sum += static_cast<double>(binomial(rng, 40, 0.1));
        double mean = sum / trials;  // expect 4, sd of the mean ~ 0.013
        CHECK(std::fabs(mean - 4.0) < 0.15);
    }
    SUBCASE("large mean path") {
        const std::uint64_t n = 1u << 20;
        const double p = 0.001;  // mean ~ 1048.6, sd ~ 32.4
        double sum = 0, sumsq = 0;
        const int trials = 4000;
        for (int i = 0; i < trials; ++i) {
            auto x = static_cast<double>(binomial(rng, n, p));
            sum += x;
            sumsq += x * x;
        }
        double mean = sum / trials;
        double var = sumsq / trials - mean * mean;
        double expect_mean = static_cast<double>(n) * p;
        double expect_var = expect_mean * (1.0 - p);
        CHECK(std::fabs(mean - expect_mean) < 3.0);  // ~6 sigma of the mean estimate
        CHECK(std::fabs(var - expect_var) / expect_var < 0.15);
    }
    SUBCASE("edges") {
        CHECK(binomial(rng, 100, 0.0) == 0);
        CHECK(binomial(rng, 100, 1.0) == 100);
        CHECK(binomial(rng, 0, 0.5) == 0);
    }
}
