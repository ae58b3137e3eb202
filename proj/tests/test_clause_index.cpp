#include <set>

#include "doctest.h"
#include "satproc/clause_index.hpp"
#include "test_util.hpp"

using namespace satproc;
using namespace satproc::test;

TEST_CASE("clause universe sizes") {
    CHECK(clause_universe_size(4, 3) == 32);
    CHECK(clause_universe_size(3, 3) == 8);
    CHECK(clause_universe_size(100, 3) == 1293600);  // 8 * C(100,3), C(100,3) = 161700
    CHECK_THROWS_AS(clause_universe_size(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(clause_universe_size(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(clause_universe_size(2000000, 7), std::overflow_error);
}

TEST_CASE("binomial coefficients") {
    CHECK(binomial_coefficient(0, 0) == 1);
    CHECK(binomial_coefficient(10, 3) == 120);
    CHECK(binomial_coefficient(100, 3) == 161700);
    CHECK(binomial_coefficient(5, 9) == 0);
    CHECK(binomial_coefficient(2000, 3) == 1331334000ULL);
}

TEST_CASE("index bijection is exhaustive for small parameters") {
    for (std::uint32_t n = 2; n <= 12; ++n) {
        for (std::uint32_t k : {2u, 3u, 4u}) {
            if (k > n) continue;
            std::uint64_t m = clause_universe_size(n, k);
            std::set<std::uint64_t> seen;
            for (std::uint64_t idx = 0; idx < m; ++idx) {
                Clause c = clause_from_index(n, k, idx);
                REQUIRE(c.width() == k);
                REQUIRE(clause_to_index(n, k, c) == idx);
                seen.insert(idx);
            }
            REQUIRE(seen.size() == m);
        }
    }
}

TEST_CASE("image of [0,80) at n=5 k=3 has no duplicate clauses") {
    std::set<std::vector<std::uint32_t>> images;
    for (std::uint64_t idx = 0; idx < 80; ++idx) {
        Clause c = clause_from_index(5, 3, idx);
        std::vector<std::uint32_t> key;
        for (Lit l : c) key.push_back(l.code());
        images.insert(key);
    }
    CHECK(images.size() == 80);
}

TEST_CASE("index range errors") {
    CHECK_THROWS_AS(clause_from_index(4, 3, 32), std::out_of_range);
    Clause wrong_width({pos(0), pos(1)});
    CHECK_THROWS_AS(clause_to_index(4, 3, wrong_width), std::invalid_argument);
    CHECK_THROWS_AS(Clause({pos(1), pos(1), pos(2)}), std::invalid_argument);
}

TEST_CASE("satisfied-clause bijection skips exactly the falsified pattern") {
    Assignment all_true(3, true);
    CHECK(satisfied_universe_size(3, 3) == 7);
    std::set<std::uint64_t> seen;
    for (std::uint64_t idx = 0; idx < 7; ++idx) {
        Clause c = satisfied_clause_from_index(3, 3, all_true, idx);
        CHECK(evaluate(c, all_true));
        seen.insert(clause_to_index(3, 3, c));
    }
    CHECK(seen.size() == 7);
    // the excluded clause is the all-negated one
    Clause forbidden({neg(0), neg(1), neg(2)});
    CHECK(seen.count(clause_to_index(3, 3, forbidden)) == 0);

    // random psi, larger n: every image clause is satisfied, images distinct
    Assignment psi = random_assignment(7, 3);
    std::uint64_t m = satisfied_universe_size(7, 3);
    std::set<std::uint64_t> image;
    for (std::uint64_t idx = 0; idx < m; ++idx) {
        Clause c = satisfied_clause_from_index(7, 3, psi, idx);
        REQUIRE(evaluate(c, psi));
        image.insert(clause_to_index(7, 3, c));
    }
    CHECK(image.size() == m);
}
