#pragma once

#include <vector>

#include "satproc/clause_index.hpp"
#include "satproc/formula.hpp"
#include "satproc/rng.hpp"

namespace satproc::test {

inline Lit pos(Var v) { return Lit(v, false); }
inline Lit neg(Var v) { return Lit(v, true); }

/// m distinct random width-k clauses in random order.
inline Formula random_formula(std::uint32_t n, std::uint32_t k, std::uint64_t m, std::uint64_t seed) {
    Rng rng(seed);
    auto indices = sample_distinct(rng, clause_universe_size(n, k), m);
    Formula f(n, k);
    for (auto idx : indices) f.append(clause_from_index(n, k, idx));
    return f;
}

inline Assignment random_assignment(std::uint32_t n, std::uint64_t seed) {
    Rng rng(seed);
    Assignment a(n);
    for (Var v = 0; v < n; ++v) a.set(v, (rng.next() & 1) != 0);
    return a;
}

}  // namespace satproc::test
