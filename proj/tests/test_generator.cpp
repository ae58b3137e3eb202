#include <set>

#include "doctest.h"
#include "satproc/enumerate.hpp"
#include "satproc/generator.hpp"
#include "satproc/json_io.hpp"
#include "satproc/oracle.hpp"
#include "test_util.hpp"

using namespace satproc;
using namespace satproc::test;

namespace {

ProcessConfig perm_config(std::uint32_t n, std::uint64_t m, std::uint64_t seed) {
    ProcessConfig cfg;
    cfg.n = n;
    cfg.k = 3;
    cfg.variant = ProcessVariant::PermM;
    cfg.m = m;
    cfg.seed = seed;
    return cfg;
}

// re-derive the formula from the trace and check the witness
void check_trace_consistency(const GenerationResult& result) {
    Formula rebuilt(result.formula.num_vars(), result.formula.width());
    std::uint64_t accepted = 0, rejected = 0;
    for (const TraceEvent& e : result.trace.events) {
        if (e.decision == Decision::Accepted) {
            rebuilt.append(e.clause);
            ++accepted;
        } else if (e.decision == Decision::Rejected) {
            ++rejected;
        }
    }
    REQUIRE(rebuilt == result.formula);
    REQUIRE(accepted == result.trace.accepted);
    REQUIRE(rejected == result.trace.rejected);
    REQUIRE(satisfies(result.formula, result.trace.witness));
}

}  // namespace

TEST_CASE("perm process full scan at n=3 leaves seven clauses and one solution") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 99ull}) {
        auto result = generate_perm_process(perm_config(3, 8, seed));
        CHECK(result.formula.num_clauses() == 7);
        CHECK(result.trace.rejected == 1);
        auto sols = enumerate_solutions(result.formula);
        REQUIRE(sols.size() == 1);
        check_trace_consistency(result);
    }
}

TEST_CASE("below the threshold rejections are rare") {
    int clean = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto result = generate_perm_process(perm_config(20, 20, seed));
        if (result.trace.rejected == 0) ++clean;
        check_trace_consistency(result);
    }
    CHECK(clean >= 48);
}

TEST_CASE("rejected clauses are certified unsatisfiable with the prefix") {
    int rejections_checked = 0;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto result = generate_perm_process(perm_config(10, 200, seed));
        check_trace_consistency(result);
        Formula prefix(10, 3);
        for (const TraceEvent& e : result.trace.events) {
            if (e.decision == Decision::Accepted) {
                prefix.append(e.clause);
            } else if (e.decision == Decision::Rejected) {
                std::vector<Clause> with = prefix.clauses();
                with.push_back(e.clause);
                auto enumeration = enumerate_clauses(10, with, 1);
                REQUIRE(enumeration.solutions.empty());
                ++rejections_checked;
            }
        }
    }
    CHECK(rejections_checked > 20);
}

TEST_CASE("fast paths do not change decisions") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto cfg = perm_config(12, 300, seed);
        auto with_tracking = generate_perm_process(cfg);
        cfg.track_limit = 0;  // disable the exact tracker
        auto without_tracking = generate_perm_process(cfg);
        REQUIRE(with_tracking.formula == without_tracking.formula);
        REQUIRE(with_tracking.trace.events.size() == without_tracking.trace.events.size());
        for (std::size_t i = 0; i < with_tracking.trace.events.size(); ++i)
            REQUIRE(with_tracking.trace.events[i].decision ==
                    without_tracking.trace.events[i].decision);
        check_trace_consistency(without_tracking);
    }
}

TEST_CASE("determinism: identical config gives identical formula and trace") {
    auto cfg = perm_config(15, 150, 321);
    auto a = generate_perm_process(cfg);
    auto b = generate_perm_process(cfg);
    CHECK(a.formula == b.formula);
    CHECK(trace_to_jsonl(a.trace) == trace_to_jsonl(b.trace));
}

TEST_CASE("coin process edge probabilities") {
    ProcessConfig cfg;
    cfg.n = 3;
    cfg.k = 3;
    cfg.variant = ProcessVariant::CoinP;
    cfg.seed = 5;
    SUBCASE("p = 0 gives the empty formula") {
        cfg.p = 0.0;
        auto result = generate_coin_process(cfg);
        CHECK(result.formula.num_clauses() == 0);
        CHECK(result.trace.accepted == 0);
    }
    SUBCASE("p = 1 scans everything: seven accepted, one rejected") {
        cfg.p = 1.0;
        auto result = generate_coin_process(cfg);
        CHECK(result.trace.accepted == 7);
        CHECK(result.trace.rejected == 1);
        auto sols = enumerate_solutions(result.formula);
        REQUIRE(sols.size() == 1);
        // the omitted clause is exactly the one falsified by the survivor
        Assignment survivor = sols[0];
        for (std::uint64_t idx = 0; idx < 8; ++idx) {
            Clause c = clause_from_index(3, 3, idx);
            CHECK(result.formula.contains(c) == evaluate(c, survivor));
        }
    }
}

TEST_CASE("coin success counts match the binomial mean") {
    ProcessConfig cfg;
    cfg.n = 4;
    cfg.k = 3;
    cfg.variant = ProcessVariant::CoinP;
    cfg.p = 0.25;
    double sum = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        cfg.seed = derive_seed(77, 0, static_cast<std::uint64_t>(i));
        auto result = generate_coin_process(cfg);
        sum += static_cast<double>(result.trace.accepted + result.trace.rejected);
    }
    double mean = sum / trials;  // Binomial(32, 0.25): mean 8, sigma 2.449
    double sigma_mean = 2.449 / std::sqrt(static_cast<double>(trials));
    CHECK(std::fabs(mean - 8.0) <= 3.0 * sigma_mean);
}

TEST_CASE("scan and binomial coin modes draw from the same distribution") {
    // mean accepted count should agree between modes across seeds
    ProcessConfig cfg;
    cfg.n = 4;
    cfg.k = 3;
    cfg.variant = ProcessVariant::CoinP;
    cfg.p = 0.3;
    double scan_sum = 0, binom_sum = 0;
    const int trials = 4000;
    for (int i = 0; i < trials; ++i) {
        cfg.seed = derive_seed(123, 1, static_cast<std::uint64_t>(i));
        cfg.coin_mode = CoinMode::Scan;
        scan_sum += static_cast<double>(generate_coin_process(cfg).trace.accepted);
        cfg.coin_mode = CoinMode::Binomial;
        binom_sum += static_cast<double>(generate_coin_process(cfg).trace.accepted);
    }
    // both means estimate the same quantity; allow 5 sigma of the difference
    double diff = std::fabs(scan_sum - binom_sum) / trials;
    CHECK(diff < 0.35);
}

TEST_CASE("unrestricted coin stream filtered by acceptance equals the coin process") {
    ProcessConfig cfg;
    cfg.n = 4;
    cfg.k = 3;
    cfg.variant = ProcessVariant::UnrestrictedP;
    cfg.p = 0.5;
    cfg.coin_mode = CoinMode::Scan;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        cfg.seed = seed;
        Formula stream = generate_unrestricted(cfg);
        RestrictedAcceptor acceptor(4, 3);
        Formula filtered(4, 3);
        for (const Clause& c : stream.clauses())
            if (acceptor.offer(c)) filtered.append(c);
        ProcessConfig coin = cfg;
        coin.variant = ProcessVariant::CoinP;
        auto result = generate_coin_process(coin);
        REQUIRE(filtered == result.formula);
    }
}

TEST_CASE("unrestricted p=1 yields all clauses, p=0 none") {
    ProcessConfig cfg;
    cfg.n = 4;
    cfg.k = 3;
    cfg.variant = ProcessVariant::UnrestrictedP;
    cfg.seed = 9;
    cfg.p = 1.0;
    CHECK(generate_unrestricted(cfg).num_clauses() == 32);
    cfg.p = 0.0;
    CHECK(generate_unrestricted(cfg).num_clauses() == 0);
}

TEST_CASE("two-step rounds and composite probability") {
    ProcessConfig cfg;
    cfg.n = 4;
    cfg.k = 3;
    cfg.variant = ProcessVariant::TwoStep;
    cfg.seed = 31;
    SUBCASE("p1 = 0 leaves round one empty") {
        cfg.p1 = 0.0;
        cfg.p2 = 0.4;
        auto result = generate_two_step(cfg);
        CHECK(result.round1.num_clauses() == 0);
        CHECK(result.trace.composite_p == doctest::Approx(0.4));
    }
    SUBCASE("p2 = 0 leaves round two empty") {
        cfg.p1 = 0.4;
        cfg.p2 = 0.0;
        auto result = generate_two_step(cfg);
        CHECK(result.round2.num_clauses() == 0);
    }
    SUBCASE("rounds are disjoint and the filtered result is satisfiable") {
        cfg.p1 = 0.3;
        cfg.p2 = 0.3;
        cfg.two_step_filter = true;
        auto result = generate_two_step(cfg);
        for (const Clause& c : result.round2.clauses()) CHECK(!result.round1.contains(c));
        CHECK(satisfies(result.accepted, result.trace.witness));
        CHECK(result.trace.scanned ==
              result.round1.num_clauses() + result.round2.num_clauses());
    }
}

TEST_CASE("planted formulas") {
    Assignment psi = random_assignment(6, 11);
    Formula f = generate_planted(6, 3, 50, psi, 42);
    CHECK(f.num_clauses() == 50);
    for (const Clause& c : f.clauses()) CHECK(evaluate(c, psi));

    // the full satisfied universe
    std::uint64_t full = satisfied_universe_size(6, 3);
    Formula all = generate_planted(6, 3, full, psi, 43);
    CHECK(all.num_clauses() == full);

    Assignment all_true(3, true);
    Formula seven = generate_planted(3, 3, 7, all_true, 44);
    Clause forbidden({neg(0), neg(1), neg(2)});
    CHECK(!seven.contains(forbidden));
    CHECK_THROWS_AS(generate_planted(3, 3, 8, all_true, 1), std::invalid_argument);
}

TEST_CASE("check_satisfiable basics and oracle agreement") {
    Formula empty(4, 3);
    auto witness = check_satisfiable(empty);
    REQUIRE(witness.has_value());
    CHECK(*witness == Assignment(4, false));

    Formula all(3, 3);
    for (std::uint64_t idx = 0; idx < 8; ++idx) all.append(clause_from_index(3, 3, idx));
    CHECK(!check_satisfiable(all).has_value());

    int unsat_seen = 0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        std::uint32_t n = 6 + static_cast<std::uint32_t>(seed % 10);  // 6..15
        std::uint64_t m = 3 + (seed * 11) % (6 * n);
        m = std::min<std::uint64_t>(m, clause_universe_size(n, 3));
        Formula f = random_formula(n, 3, m, seed + 4000);
        auto w = check_satisfiable(f);
        bool expected = !enumerate_clauses(n, f.clauses(), 1).solutions.empty();
        REQUIRE(w.has_value() == expected);
        if (w) REQUIRE(satisfies(f, *w));
        else ++unsat_seen;
    }
    CHECK(unsat_seen > 20);
}

TEST_CASE("config validation") {
    ProcessConfig cfg;
    cfg.n = 4;
    cfg.k = 5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.k = 3;
    cfg.variant = ProcessVariant::PermM;
    cfg.m = 33;  // universe is 32
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.m = 32;
    CHECK_NOTHROW(cfg.validate());
    cfg.variant = ProcessVariant::CoinP;
    cfg.p = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("trace jsonl round trip") {
    auto result = generate_perm_process(perm_config(6, 40, 8));
    std::string text = trace_to_jsonl(result.trace);
    GenerationTrace back = trace_from_jsonl(text);
    CHECK(back.accepted == result.trace.accepted);
    CHECK(back.rejected == result.trace.rejected);
    CHECK(back.scanned == result.trace.scanned);
    CHECK(back.witness == result.trace.witness);
    REQUIRE(back.events.size() == result.trace.events.size());
    for (std::size_t i = 0; i < back.events.size(); ++i) {
        CHECK(back.events[i].clause == result.trace.events[i].clause);
        CHECK(back.events[i].decision == result.trace.events[i].decision);
    }
}
