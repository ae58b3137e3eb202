#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "satproc/corebuilder.hpp"
#include "satproc/formula.hpp"

namespace satproc {

/// Whether reassignment applies flips simultaneously per round (supports
/// measured against the round-start snapshot) or immediately during the scan.
enum class FlipMode { Batch, Sequential };

struct SolverConfig {
    std::uint64_t t = 0;                 // support threshold; 0 means "use the sweep"
    std::vector<std::uint64_t> t_sweep;  // empty: default sweep derived from m/n
    std::uint32_t reassign_iters = 0;    // 0: ceil(log2 n)
    Ratio reassign_flip_factor{2, 3};
    Ratio unassign_factor{1, 1};
    std::uint32_t component_cap = 0;  // 0: 3 * ceil(log2 n)
    FlipMode flip_mode = FlipMode::Batch;
    RemovalSchedule unassign_schedule = RemovalSchedule::LowestIndexFirst;

    std::uint32_t resolved_reassign_iters(std::uint32_t n) const;
    std::uint32_t resolved_component_cap(std::uint32_t n) const;
    /// The configured sweep, or {ceil(b * m/n) : b in {0.05, 0.1, 0.2, 0.4}}.
    std::vector<std::uint64_t> resolved_sweep(std::uint32_t n, std::size_t m) const;
};

enum class FailureReason : std::uint8_t {
    ComponentTooLarge,
    PropagationConflict,
    ExhaustiveUnsat,
};

const char* to_string(FailureReason r);

struct SolveStages {
    std::vector<std::uint64_t> flips_per_round;
    std::uint64_t unassigned_count = 0;
    std::vector<Var> unassign_order;
    std::uint32_t propagation_rounds = 0;
    std::vector<std::size_t> component_sizes;   // descending
    std::uint64_t majority_disagreement = 0;    // Hamming(MAJ, result), success only
};

struct SolveOutcome {
    std::optional<Assignment> result;
    FailureReason failure = FailureReason::ExhaustiveUnsat;  // valid when !result
    std::uint64_t t_used = 0;                                // successful or last attempted t
    std::vector<std::uint64_t> attempted_t;
    SolveStages stages;  // from the successful (or last) attempt
    bool success() const { return result.has_value(); }
};

/// TRUE iff the variable appears positively more often than negatively;
/// ties and absent variables go FALSE.
Assignment majority_vote(const Formula& f);

/// Iterated flipping: each round flips every variable supporting fewer than
/// reassign_flip_factor * t clauses. Early exit on a flip-free round.
Assignment reassignment(const Formula& f, const Assignment& start, const SolverConfig& cfg,
                        std::vector<std::uint64_t>* flips_per_round = nullptr);

/// Unassigns (lowest index first) any variable whose partial-assignment
/// support drops below unassign_factor * t, to fixpoint.
PartialAssignment unassignment(const Formula& f, const Assignment& psi, const SolverConfig& cfg,
                               std::vector<Var>* order = nullptr);

struct PropagationResult {
    bool conflict = false;
    PartialAssignment assignment;       // xi extended by every propagated variable
    ResidualFormula remaining;          // propagation-free residual
    std::vector<std::uint32_t> rounds;  // per variable: round set (1-based), 0 if untouched
    std::uint32_t round_count = 0;
};

/// Standard unit propagation over a residual formula, with round bookkeeping.
PropagationResult unit_propagation(const ResidualFormula& residual, const PartialAssignment& xi);

struct ComponentSearchResult {
    std::optional<Assignment> assignment;
    std::optional<FailureReason> failure;
    std::vector<std::size_t> component_sizes;  // descending
    std::size_t offending_component = 0;       // size that exceeded the cap
};

/// Per component of size <= component_cap, picks the lexicographically least
/// satisfying assignment; unconstrained unassigned variables default FALSE.
ComponentSearchResult exhaustive_component_search(const ResidualFormula& residual,
                                                  const PartialAssignment& xi,
                                                  const SolverConfig& cfg);

/// The five-step pipeline (majority vote, reassignment, unassignment, unit
/// propagation, exhaustive component search), retried over the t sweep until
/// success. Any returned assignment is verified against f before return.
SolveOutcome solve(const Formula& f, const SolverConfig& cfg);

}  // namespace satproc
