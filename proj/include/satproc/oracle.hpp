#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "satproc/enumerate.hpp"
#include "satproc/formula.hpp"

namespace satproc {

constexpr std::uint32_t kDefaultOracleVarLimit = 26;

/// All satisfying assignments, lexicographic. Refuses n above var_limit.
std::vector<Assignment> enumerate_solutions(const Formula& f,
                                            std::uint32_t var_limit = kDefaultOracleVarLimit);

/// Exact ground truth about a formula's solution space.
struct SolutionSpaceSummary {
    std::uint64_t beta = 0;
    std::vector<std::pair<Var, bool>> frozen;  // constant across all solutions
    std::uint32_t concentration_radius = 0;    // max pairwise Hamming distance
    double entropy = 0.0;                      // (1/n) * log2(beta); 0 when beta == 0
    std::vector<std::vector<std::uint64_t>> clusters;  // solution indices, linked by Hamming distance
    SolutionList solutions;                            // lexicographic
};

SolutionSpaceSummary summarize_solution_space(const Formula& f,
                                              std::uint32_t cluster_link_distance = 1,
                                              std::uint32_t var_limit = kDefaultOracleVarLimit);

struct ProportionalityReport {
    double rho = 0.0;
    std::size_t size_cap = 0;
    bool exhaustive = false;  // search was complete for all |U| <= size_cap
    std::optional<std::vector<Var>> violating_set;
    std::size_t violating_clause_count = 0;  // clauses with >= 2 variables in the set
};

/// Searches for a set U, |U| <= size_cap, with at least rho*|U| clauses each
/// containing >= 2 variables of U. Exhaustive while subset size and total work
/// allow; beyond that a peeling heuristic reports only certified violations.
ProportionalityReport check_proportional(const Formula& f, double rho, std::size_t size_cap,
                                         std::size_t exhaustive_size_limit = 14,
                                         std::uint64_t work_budget = 200000000ULL);

/// (positive, negative) clause counts for a variable.
std::pair<std::size_t, std::size_t> count_appearances(const Formula& f, Var v);

/// Clauses of f with at least two variables in U (the proportionality count).
std::size_t overlap_clause_count(const Formula& f, std::span<const Var> u);

}  // namespace satproc
