#include "doctest.h"
#include "satproc/cdcl.hpp"
#include "satproc/enumerate.hpp"
#include "test_util.hpp"

using namespace satproc;
using namespace satproc::test;

namespace {

bool enumeration_sat(const Formula& f) {
    return !enumerate_clauses(f.num_vars(), f.clauses(), 1).solutions.empty();
}

}  // namespace

TEST_CASE("luby sequence") {
    std::vector<std::uint64_t> expect{1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8};
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(luby(i) == expect[i]);
}

TEST_CASE("trivial cases") {
    CdclSolver empty(3);
    CHECK(empty.solve());

    CdclSolver unit(2);
    CHECK(unit.add_clause(std::vector<Lit>{pos(0)}));
    CHECK(unit.add_clause(std::vector<Lit>{neg(1)}));
    REQUIRE(unit.solve());
    CHECK(unit.model_value(0));
    CHECK(!unit.model_value(1));

    CdclSolver contradictory(1);
    contradictory.add_clause(std::vector<Lit>{pos(0)});
    CHECK(!contradictory.add_clause(std::vector<Lit>{neg(0)}));
    CHECK(!contradictory.okay());
    CHECK(!contradictory.solve());
}

TEST_CASE("all eight width-3 clauses over three variables are unsatisfiable") {
    CdclSolver solver(3);
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<Lit> lits;
        for (Var v = 0; v < 3; ++v) lits.push_back(Lit(v, ((mask >> v) & 1) != 0));
        solver.add_clause(lits);
    }
    CHECK(!solver.solve());
}

TEST_CASE("agrees with exhaustive enumeration across densities") {
    int sat_seen = 0, unsat_seen = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        std::uint32_t n = 5 + static_cast<std::uint32_t>(seed % 8);  // 5..12
        std::uint64_t m = 2 + (seed * 7) % (6 * n);
        m = std::min<std::uint64_t>(m, clause_universe_size(n, 3));
        Formula f = random_formula(n, 3, m, seed);
        CdclSolver solver(n);
        bool ok = true;
        for (const Clause& c : f.clauses()) ok = solver.add_clause(c.literals()) && ok;
        bool sat = ok && solver.solve();
        bool expected = enumeration_sat(f);
        REQUIRE(sat == expected);
        if (sat) {
            REQUIRE(satisfies(f, solver.model_assignment()));
            ++sat_seen;
        } else {
            ++unsat_seen;
        }
    }
    CHECK(sat_seen > 50);
    CHECK(unsat_seen > 50);
}

TEST_CASE("assumptions leave the solver reusable") {
    // x0 forced true via (x0 | x1), (x0 | ~x1)
    CdclSolver solver(3);
    solver.add_clause(std::vector<Lit>{pos(0), pos(1)});
    solver.add_clause(std::vector<Lit>{pos(0), neg(1)});
    std::vector<Lit> assume_false{neg(0)};
    CHECK(!solver.solve(assume_false));
    CHECK(solver.okay());  // only the assumption failed
    std::vector<Lit> assume_true{pos(0)};
    CHECK(solver.solve(assume_true));
    CHECK(solver.solve());
    CHECK(solver.model_value(0));
}

TEST_CASE("incremental assumption queries match enumeration") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        std::uint32_t n = 8;
        Formula f = random_formula(n, 3, 50, seed ^ 0xabc);
        CdclSolver solver(n);
        Formula so_far(n, 3);
        for (const Clause& c : f.clauses()) {
            for (Lit l : c) {
                std::vector<Lit> assumption{l};
                bool sat = solver.okay() && solver.solve(assumption);
                bool expected = false;
                auto enumeration = enumerate_clauses(n, so_far.clauses());
                for (std::size_t i = 0; i < enumeration.solutions.size() && !expected; ++i)
                    expected = enumeration.solutions.satisfies(i, l);
                REQUIRE(sat == expected);
            }
            so_far.append(c);
            solver.add_clause(c.literals());
            if (!solver.okay()) break;
        }
    }
}

TEST_CASE("deterministic across identical runs") {
    auto run = [] {
        Formula f = random_formula(12, 3, 60, 77);
        CdclSolver solver(12);
        for (const Clause& c : f.clauses()) solver.add_clause(c.literals());
        bool sat = solver.solve();
        std::vector<std::uint8_t> model;
        if (sat)
            for (Var v = 0; v < 12; ++v) model.push_back(solver.model_value(v) ? 1 : 0);
        return std::make_pair(solver.conflicts(), model);
    };
    auto a = run();
    auto b = run();
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
}
