#include <algorithm>

#include "doctest.h"
#include "satproc/enumerate.hpp"
#include "satproc/oracle.hpp"
#include "test_util.hpp"

using namespace satproc;
using namespace satproc::test;

namespace {

// independent brute force over all 2^n assignments
std::vector<Assignment> brute_force_solutions(const Formula& f) {
    std::vector<Assignment> out;
    REQUIRE(f.num_vars() <= 20);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << f.num_vars()); ++mask) {
        Assignment a(f.num_vars());
        for (Var v = 0; v < f.num_vars(); ++v) a.set(v, (mask >> v) & 1);
        if (satisfies(f, a)) out.push_back(a);
    }
    return out;
}

// the x-forcing example: x=FALSE leaves the contradictory system over {y,z}
Formula forcing_formula() {
    return Formula::from_clauses(3, 3, {Clause({pos(0), pos(1), pos(2)}),
                                        Clause({pos(0), neg(1), pos(2)}),
                                        Clause({pos(0), pos(1), neg(2)}),
                                        Clause({pos(0), neg(1), neg(2)})});
}

}  // namespace

TEST_CASE("enumerate_solutions basic examples") {
    Formula empty(2, 3);
    CHECK(enumerate_solutions(empty).size() == 4);

    Formula one = Formula::from_clauses(3, 3, {Clause({pos(0), pos(1), pos(2)})});
    auto sols = enumerate_solutions(one);
    CHECK(sols.size() == 7);  // everything except all-FALSE

    auto forced = enumerate_solutions(forcing_formula());
    auto expected = brute_force_solutions(forcing_formula());
    REQUIRE(forced.size() == expected.size());
    REQUIRE(forced.size() == 4);
    for (const Assignment& a : forced) CHECK(a.value(0));
}

TEST_CASE("enumeration is lexicographic and matches brute force") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        std::uint32_t n = 4 + static_cast<std::uint32_t>(seed % 7);
        std::uint64_t m = (seed * 3) % (4 * n) + 1;
        m = std::min<std::uint64_t>(m, clause_universe_size(n, 3));
        Formula f = random_formula(n, 3, m, seed + 500);
        auto fast = enumerate_solutions(f);
        auto slow = brute_force_solutions(f);
        REQUIRE(fast.size() == slow.size());
        // brute force ascends by value-mask with x0 the LOW bit; lexicographic
        // order instead has x0 most significant, so sort the slow list
        std::sort(slow.begin(), slow.end(), [](const Assignment& a, const Assignment& b) {
            return a.raw() < b.raw();
        });
        for (std::size_t i = 0; i < fast.size(); ++i) REQUIRE(fast[i] == slow[i]);
    }
}

TEST_CASE("enumerate refuses oversized n") {
    Formula big(40, 3);
    CHECK_THROWS_AS(enumerate_solutions(big), std::invalid_argument);
}

TEST_CASE("solution cap and budget mark results incomplete") {
    Formula empty(6, 3);
    auto capped = enumerate_clauses(6, empty.clauses(), 10);
    CHECK(!capped.complete);
    CHECK(capped.solutions.size() == 10);
    auto budgeted = enumerate_clauses(6, empty.clauses(), kNoLimit, 3);
    CHECK(!budgeted.complete);
    auto full = enumerate_clauses(6, empty.clauses());
    CHECK(full.complete);
    CHECK(full.solutions.size() == 64);
}

TEST_CASE("summarize_solution_space on the forcing example") {
    auto summary = summarize_solution_space(forcing_formula());
    CHECK(summary.beta == 4);
    REQUIRE(summary.frozen.size() == 1);
    CHECK(summary.frozen[0].first == 0);
    CHECK(summary.frozen[0].second == true);
    CHECK(summary.concentration_radius == 2);
    CHECK(summary.clusters.size() == 1);
}

TEST_CASE("summarize degenerate cases") {
    Formula empty(3, 3);
    auto open = summarize_solution_space(empty);
    CHECK(open.beta == 8);
    CHECK(open.frozen.empty());
    CHECK(open.concentration_radius == 3);
    CHECK(open.entropy == doctest::Approx(1.0));

    // unique solution: all variables frozen, radius 0
    Formula unit = Formula::from_clauses(2, 1, {Clause({pos(0)}), Clause({neg(1)})});
    auto single = summarize_solution_space(unit);
    CHECK(single.beta == 1);
    CHECK(single.frozen.size() == 2);
    CHECK(single.concentration_radius == 0);
    CHECK(single.entropy == doctest::Approx(0.0));

    // unsatisfiable: beta 0, frozen empty
    Formula bad = Formula::from_clauses(1, 1, {Clause({pos(0)}), Clause({neg(0)})});
    auto none = summarize_solution_space(bad);
    CHECK(none.beta == 0);
    CHECK(none.frozen.empty());
    CHECK(none.concentration_radius == 0);
}

TEST_CASE("frozen variables flip to non-solutions") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Formula f = random_formula(10, 3, 30 + (seed % 20), seed + 900);
        auto summary = summarize_solution_space(f);
        for (std::size_t i = 0; i < summary.solutions.size(); ++i) {
            Assignment a = summary.solutions.assignment(i);
            for (const auto& [v, value] : summary.frozen) {
                REQUIRE(a.value(v) == value);
                Assignment flipped = a;
                flipped.set(v, !value);
                REQUIRE(!satisfies(f, flipped));
            }
        }
    }
}

TEST_CASE("clusters partition the solutions and respect link distance") {
    Formula f = forcing_formula();
    auto summary = summarize_solution_space(f, 1);
    std::size_t total = 0;
    for (const auto& cluster : summary.clusters) total += cluster.size();
    CHECK(total == summary.beta);

    // at link distance 0 every solution is its own cluster
    auto isolated = summarize_solution_space(f, 0);
    CHECK(isolated.clusters.size() == isolated.beta);
}

TEST_CASE("count_appearances") {
    Formula f = Formula::from_clauses(3, 3, {Clause({pos(0), pos(1), pos(2)}),
                                             Clause({neg(0), pos(1), pos(2)})});
    CHECK(count_appearances(f, 0) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(count_appearances(f, 1) == std::pair<std::size_t, std::size_t>{2, 0});
    Formula empty(3, 3);
    CHECK(count_appearances(empty, 0) == std::pair<std::size_t, std::size_t>{0, 0});

    // sum over variables equals k*m
    Formula r = random_formula(9, 3, 40, 4242);
    std::size_t sum = 0;
    for (Var v = 0; v < 9; ++v) {
        auto [p, n] = count_appearances(r, v);
        sum += p + n;
    }
    CHECK(sum == 3 * r.num_clauses());
}

TEST_CASE("proportionality: trivial and direct examples") {
    Formula empty(8, 3);
    auto report = check_proportional(empty, 0.5, 8);
    CHECK(report.exhaustive);
    CHECK(!report.violating_set.has_value());

    // three clauses all containing x0 and x1: U = {x0, x1} with rho = 1
    Formula f = Formula::from_clauses(5, 3, {Clause({pos(0), pos(1), pos(2)}),
                                             Clause({pos(0), pos(1), pos(3)}),
                                             Clause({pos(0), pos(1), pos(4)})});
    auto hit = check_proportional(f, 1.0, 5);
    CHECK(hit.exhaustive);
    REQUIRE(hit.violating_set.has_value());
    CHECK(overlap_clause_count(f, *hit.violating_set) >=
          static_cast<std::size_t>(1.0 * static_cast<double>(hit.violating_set->size())));
    CHECK_THROWS_AS(check_proportional(f, 0.0, 5), std::invalid_argument);
}

TEST_CASE("exhaustive checker agrees with an independent subset scan") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        std::uint32_t n = 10;
        Formula f = random_formula(n, 3, 25, seed + 31);
        for (double rho : {1.5, 2.5, 4.0}) {
            auto report = check_proportional(f, rho, n);
            REQUIRE(report.exhaustive);
            bool found = false;
            for (std::uint32_t mask = 1; mask < (1u << n) && !found; ++mask) {
                std::vector<Var> u;
                for (Var v = 0; v < n; ++v)
                    if ((mask >> v) & 1) u.push_back(v);
                std::size_t count = 0;
                for (const Clause& c : f.clauses()) {
                    int inside = 0;
                    for (Lit l : c) inside += std::find(u.begin(), u.end(), l.var()) != u.end();
                    count += inside >= 2;
                }
                found = static_cast<double>(count) >= rho * static_cast<double>(u.size());
            }
            REQUIRE(report.violating_set.has_value() == found);
            if (report.violating_set) {
                // reported violation is genuine
                REQUIRE(static_cast<double>(overlap_clause_count(f, *report.violating_set)) >=
                        rho * static_cast<double>(report.violating_set->size()));
            }
        }
    }
}

TEST_CASE("peeling heuristic reports only certified violations") {
    // dense plant: 6 clauses over {x0,x1,x2} inside a larger sparse formula
    Formula f(40, 3);
    f.append(Clause({pos(0), pos(1), pos(2)}));
    f.append(Clause({neg(0), pos(1), pos(2)}));
    f.append(Clause({pos(0), neg(1), pos(2)}));
    f.append(Clause({pos(0), pos(1), neg(2)}));
    f.append(Clause({neg(0), neg(1), pos(2)}));
    f.append(Clause({neg(0), pos(1), neg(2)}));
    for (std::uint64_t i = 0; i < 12; ++i)
        f.append(Clause({pos(static_cast<Var>(3 + 3 * i)), pos(static_cast<Var>(4 + 3 * i)),
                         pos(static_cast<Var>(5 + 3 * i))}));
    // forbid the exhaustive path via a tiny work budget
    auto report = check_proportional(f, 2.0, 3, 14, 10);
    CHECK(!report.exhaustive);
    REQUIRE(report.violating_set.has_value());
    REQUIRE(static_cast<double>(overlap_clause_count(f, *report.violating_set)) >=
            2.0 * static_cast<double>(report.violating_set->size()));
}
