#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "satproc/cdcl.hpp"
#include "satproc/enumerate.hpp"
#include "satproc/formula.hpp"
#include "satproc/rng.hpp"

namespace satproc {

enum class ProcessVariant { PermM, CoinP, UnrestrictedP, TwoStep, Planted };

/// How coin-flip processes realize the scan over the clause universe:
/// Scan materializes a full shuffled permutation (small M only), Binomial
/// draws the success count first and reuses the permutation-budget machinery.
/// The two are distribution-identical.
enum class CoinMode { Auto, Scan, Binomial };

struct ProcessConfig {
    std::uint32_t n = 0;
    std::uint32_t k = 3;
    ProcessVariant variant = ProcessVariant::PermM;
    std::uint64_t m = 0;  // clause budget (PermM, Planted)
    double p = 0.0;       // CoinP, UnrestrictedP
    double p1 = 0.0;      // TwoStep round probabilities
    double p2 = 0.0;
    std::uint64_t seed = 0;

    CoinMode coin_mode = CoinMode::Auto;
    bool two_step_filter = false;  // restricted acceptance over the concatenated rounds

    // Exact solution tracking: once the solution count provably drops to
    // track_limit or below, acceptance checks become set lookups. 0 disables.
    std::uint64_t track_limit = 512;
    std::uint64_t track_budget = 1 << 20;  // enumeration decisions per attempt

    void validate() const;  // throws std::invalid_argument
};

enum class Decision : std::uint8_t { Accepted, Rejected, NotDrawn };

struct TraceEvent {
    Clause clause;
    Decision decision;
};

/// Ordered record of one run of a restricted process.
struct GenerationTrace {
    std::vector<TraceEvent> events;
    Assignment witness;  // satisfies the final formula (restricted runs only)
    std::uint64_t rng_seed = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    std::uint64_t scanned = 0;
    double composite_p = 0.0;  // two-step runs: p1 + p2 - p1*p2
};

struct GenerationResult {
    Formula formula;
    GenerationTrace trace;
};

struct TwoStepResult {
    Formula round1;
    Formula round2;
    Formula accepted;  // restricted acceptance over round1 ++ round2 (filter flag only)
    GenerationTrace trace;
};

/// Scan the first m clauses of a uniform permutation of the clause universe,
/// accepting each iff the formula stays satisfiable. Realized by sampling m
/// distinct clauses uniformly and ordering them uniformly, which draws the
/// same distribution over ordered m-tuples.
GenerationResult generate_perm_process(const ProcessConfig& cfg);

/// Scan the whole universe in uniform order, keeping each clause with
/// probability p, restricted-acceptance applied to the kept ones.
GenerationResult generate_coin_process(const ProcessConfig& cfg);

/// Same coin draw without the acceptance rule; may be unsatisfiable.
Formula generate_unrestricted(const ProcessConfig& cfg);

GenerationResult generate(const ProcessConfig& cfg);  // PermM or CoinP dispatch

TwoStepResult generate_two_step(const ProcessConfig& cfg);

/// m distinct clauses uniformly from the (2^k - 1) * C(n, k) clauses
/// satisfied by psi.
Formula generate_planted(std::uint32_t n, std::uint32_t k, std::uint64_t m, const Assignment& psi,
                         std::uint64_t seed);

/// Complete satisfiability check: pure-literal preprocessing plus conflict-
/// learning search. Returns a witness iff the formula is satisfiable.
std::optional<Assignment> check_satisfiable(const Formula& f);

/// Online restricted-acceptance engine: offer clauses one at a time; each is
/// accepted iff the formula so far plus the clause is satisfiable. Fast paths:
/// a small cache of satisfying assignments, then (once the solution count is
/// certified small) an exact solution list; full searches run on an
/// incremental conflict-learning solver shared across offers.
class RestrictedAcceptor {
public:
    RestrictedAcceptor(std::uint32_t n, std::uint32_t k, std::uint64_t track_limit = 512,
                       std::uint64_t track_budget = 1 << 20);

    bool offer(const Clause& c);

    const Formula& formula() const { return formula_; }
    Assignment witness() const;
    bool tracking() const { return tracking_; }
    std::uint64_t solver_searches() const { return solver_searches_; }

private:
    bool any_cached_satisfies(const Clause& c) const;
    void prune_cache(const Clause& accepted);
    void try_enable_tracking();

    Formula formula_;
    CdclSolver solver_;
    std::vector<Assignment> cache_;  // every entry satisfies formula_
    SolutionList tracked_;
    bool tracking_ = false;
    std::uint64_t track_limit_;
    std::uint64_t track_budget_;
    std::uint64_t solver_searches_ = 0;
    std::uint64_t rejections_ = 0;
    std::uint64_t next_track_attempt_ = 0;  // in rejection counts
    std::uint64_t track_backoff_ = 1;
};

}  // namespace satproc
