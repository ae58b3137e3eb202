#include <algorithm>

#include "doctest.h"
#include "satproc/formula.hpp"
#include "test_util.hpp"

using namespace satproc;
using namespace satproc::test;

TEST_CASE("clause canonical form") {
    Clause c({pos(2), neg(0), pos(1)});
    CHECK(c[0] == neg(0));
    CHECK(c[1] == pos(1));
    CHECK(c[2] == pos(2));
    CHECK(c == Clause({pos(1), pos(2), neg(0)}));
    CHECK(c.contains_var(0));
    CHECK(!c.contains_var(3));
}

TEST_CASE("formula append rejects bad clauses") {
    Formula f(4, 3);
    f.append(Clause({pos(0), pos(1), pos(2)}));
    CHECK_THROWS_AS(f.append(Clause({pos(0), pos(1), pos(2)})), std::invalid_argument);  // duplicate
    CHECK_THROWS_AS(f.append(Clause({pos(0), pos(1)})), std::invalid_argument);          // width
    CHECK_THROWS_AS(f.append(Clause({pos(0), pos(1), pos(4)})), std::invalid_argument);  // range
    CHECK(f.num_clauses() == 1);
}

TEST_CASE("evaluate and satisfies") {
    Assignment all_false(3), all_true(3, true);
    Formula empty(3, 3);
    CHECK(satisfies(empty, all_false));
    CHECK(satisfies(empty, all_true));

    Clause c({pos(0), neg(1), pos(2)});
    CHECK(evaluate(c, all_false));  // ~x2 true

    Formula f = Formula::from_clauses(3, 3, {Clause({pos(0), pos(1), pos(2)}),
                                             Clause({neg(0), neg(1), neg(2)})});
    CHECK(!satisfies(f, all_true));
    CHECK(!satisfies(f, all_false));
    Assignment mixed(3);
    mixed.set(0, true);
    CHECK(satisfies(f, mixed));
}

TEST_CASE("support counting") {
    Formula f = Formula::from_clauses(3, 3, {Clause({pos(0), neg(1), neg(2)})});
    Assignment all_true(3, true), all_false(3);
    CHECK(support_count(f, all_true, 0) == 1);
    CHECK(support_count(f, all_true, 1) == 0);
    CHECK(support_count(f, all_true, 2) == 0);
    // under all-false two literals are true: no unique supporter
    CHECK(support_count(f, all_false, 1) == 0);
    // scope {x0, x1} excludes the clause from F[scope]
    std::vector<Var> scope{0, 1};
    CHECK(support_count(f, all_true, 0, scope) == 0);
    CHECK_THROWS_AS(support_count(f, all_true, 7), std::out_of_range);
}

TEST_CASE("support under partial assignments requires assigned-false co-literals") {
    Formula f = Formula::from_clauses(3, 3, {Clause({pos(0), neg(1), neg(2)})});
    PartialAssignment xi(3);
    xi.set(0, true);
    xi.set(1, true);
    CHECK(support_count_partial(f, xi, 0) == 0);  // x2 unassigned disqualifies
    xi.set(2, true);
    CHECK(support_count_partial(f, xi, 0) == 1);
    xi.unassign(1);
    CHECK_THROWS_AS(support_count_partial(f, xi, 1), std::logic_error);

    // additivity over clauses
    Formula g = Formula::from_clauses(4, 3, {Clause({pos(0), neg(1), neg(2)}),
                                             Clause({pos(0), neg(1), neg(3)})});
    PartialAssignment full(4);
    for (Var v = 0; v < 4; ++v) full.set(v, true);
    CHECK(support_count_partial(g, full, 0) == 2);
}

TEST_CASE("support sum equals count of singly-satisfied clauses") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Formula f = random_formula(10, 3, 40, seed);
        Assignment a = random_assignment(10, seed + 100);
        std::size_t sum = 0;
        for (Var v = 0; v < 10; ++v) sum += support_count(f, a, v);
        std::size_t single = 0;
        for (const Clause& c : f.clauses()) single += supporter(c, a).has_value() ? 1 : 0;
        REQUIRE(sum == single);
    }
}

TEST_CASE("induced subformula") {
    Formula f = Formula::from_clauses(5, 3, {Clause({pos(0), pos(1), pos(2)}),
                                             Clause({pos(0), pos(1), pos(3)})});
    std::vector<Var> all{0, 1, 2, 3, 4};
    CHECK(induced_subformula(f, all) == f);
    CHECK(induced_subformula(f, {}).num_clauses() == 0);
    std::vector<Var> z{0, 1, 2};
    Formula fz = induced_subformula(f, z);
    REQUIRE(fz.num_clauses() == 1);
    CHECK(fz.clause(0) == f.clause(0));

    // monotone: F[Z1 cap Z2] is a subset of F[Z1]
    std::vector<Var> z2{0, 1, 3};
    std::vector<Var> inter{0, 1};
    Formula fi = induced_subformula(f, inter);
    for (const Clause& c : fi.clauses()) CHECK(induced_subformula(f, z).contains(c));
}

TEST_CASE("restrict_and_simplify") {
    Formula f = Formula::from_clauses(3, 3, {Clause({pos(0), pos(1), pos(2)})});
    Assignment phi(3);

    SUBCASE("satisfied clause removed") {
        phi.set(0, true);
        std::vector<Var> a{0};
        auto r = restrict_and_simplify(f, a, phi);
        REQUIRE(r.has_value());
        CHECK(r->clauses.empty());
    }
    SUBCASE("false literal dropped") {
        std::vector<Var> a{0};
        auto r = restrict_and_simplify(f, a, phi);  // phi(x0) = false
        REQUIRE(r.has_value());
        REQUIRE(r->clauses.size() == 1);
        CHECK(r->clauses[0] == Clause({pos(1), pos(2)}));
    }
    SUBCASE("empty clause reported as conflict") {
        std::vector<Var> a{0, 1, 2};
        CHECK(!restrict_and_simplify(f, a, phi).has_value());
    }
    SUBCASE("satisfying assignment over all variables leaves nothing") {
        phi.set(1, true);
        std::vector<Var> a{0, 1, 2};
        auto r = restrict_and_simplify(f, a, phi);
        REQUIRE(r.has_value());
        CHECK(r->clauses.empty());
    }
}

TEST_CASE("induced graph and connected components") {
    Formula f = Formula::from_clauses(6, 3, {Clause({pos(0), pos(1), pos(2)})});
    auto g = induced_graph(f);
    CHECK(g.adjacency[0] == std::vector<Var>{1, 2});
    CHECK(g.adjacency[3].empty());
    auto comps = connected_components(f);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0] == std::vector<Var>{0, 1, 2});

    Formula empty(6, 3);
    CHECK(connected_components(empty).empty());

    Formula chain = Formula::from_clauses(6, 3, {Clause({pos(0), pos(1), pos(2)}),
                                                 Clause({pos(2), pos(3), pos(4)})});
    auto joined = connected_components(chain);
    REQUIRE(joined.size() == 1);
    CHECK(joined[0].size() == 5);

    // ordering: size descending, then lexicographic
    Formula two = Formula::from_clauses(7, 2, {Clause({pos(5), pos(6)}),
                                               Clause({pos(0), pos(1)}),
                                               Clause({pos(1), pos(2)})});
    auto parts = connected_components(two);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == std::vector<Var>{0, 1, 2});
    CHECK(parts[1] == std::vector<Var>{5, 6});
}
