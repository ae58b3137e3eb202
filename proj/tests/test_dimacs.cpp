#include "doctest.h"
#include "satproc/dimacs.hpp"
#include "test_util.hpp"

using namespace satproc;
using namespace satproc::test;

TEST_CASE("dimacs write matches the format definition") {
    Formula f = Formula::from_clauses(3, 3, {Clause({pos(0), neg(1), pos(2)})});
    CHECK(dimacs_write(f) == "p cnf 3 1\n1 -2 3 0\n");
}

TEST_CASE("round trip on random formulas") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Formula f = random_formula(9, 3, 30, seed);
        Formula g = dimacs_read(dimacs_write(f));
        REQUIRE(f == g);
    }
}

TEST_CASE("mixed-width residual round trip") {
    ResidualFormula r;
    r.n = 4;
    r.clauses = {Clause({pos(0)}), Clause({neg(1), pos(2)}), Clause({pos(1), pos(2), pos(3)})};
    ResidualFormula back = dimacs_read_residual(dimacs_write(r));
    CHECK(back.n == 4);
    REQUIRE(back.clauses.size() == 3);
    CHECK(back.clauses[0] == r.clauses[0]);
    CHECK(back.clauses[1] == r.clauses[1]);
    CHECK(back.clauses[2] == r.clauses[2]);
    // the strict fixed-width reader rejects the same text
    CHECK_THROWS_AS(dimacs_read(dimacs_write(r)), DimacsError);
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("repeated variable") {
        try {
            dimacs_read("p cnf 3 1\n1 1 2 0\n");
            FAIL("expected DimacsError");
        } catch (const DimacsError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("malformed header") {
        CHECK_THROWS_AS(dimacs_read("p dnf 3 1\n1 2 3 0\n"), DimacsError);
        CHECK_THROWS_AS(dimacs_read("1 2 3 0\n"), DimacsError);
    }
    SUBCASE("bad literal") {
        CHECK_THROWS_AS(dimacs_read("p cnf 3 1\n1 x 3 0\n"), DimacsError);
    }
    SUBCASE("literal out of range") {
        CHECK_THROWS_AS(dimacs_read("p cnf 3 1\n1 2 4 0\n"), DimacsError);
    }
    SUBCASE("count mismatch") {
        CHECK_THROWS_AS(dimacs_read("p cnf 3 2\n1 2 3 0\n"), DimacsError);
    }
    SUBCASE("unterminated clause") {
        CHECK_THROWS_AS(dimacs_read("p cnf 3 1\n1 2 3\n"), DimacsError);
    }
    SUBCASE("comments and blank lines are fine") {
        Formula f = dimacs_read("c hello\n\np cnf 3 1\nc mid\n1 -2 3 0\n");
        CHECK(f.num_clauses() == 1);
    }
}

TEST_CASE("expected width enforcement") {
    CHECK_THROWS_AS(dimacs_read("p cnf 3 1\n1 -2 3 0\n", 2), DimacsError);
    Formula f = dimacs_read("p cnf 3 0\n", 0, 3);  // empty file takes the hint
    CHECK(f.width() == 3);
    CHECK(f.num_clauses() == 0);
}
