#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "satproc/types.hpp"

namespace satproc {

/// Complete incremental SAT solver: two-watched-literal unit propagation,
/// first-UIP conflict learning, activity-ordered branching with saved phases,
/// Luby restarts, and learned-clause reduction. Deterministic: identical
/// clause/assumption sequences give identical behavior.
///
/// Clauses may be added between solve calls; solving under assumptions leaves
/// previously learned facts intact, so repeated queries against a growing
/// formula are cheap.
class CdclSolver {
public:
    explicit CdclSolver(std::uint32_t num_vars);

    std::uint32_t num_vars() const { return static_cast<std::uint32_t>(assigns_.size()); }

    /// Adds a clause. Returns false if the solver is now in a contradictory
    /// state (empty clause or level-0 conflict).
    bool add_clause(std::span<const Lit> lits);

    /// True iff satisfiable under the given assumptions. On failure under
    /// assumptions the solver remains usable; a hard contradiction makes
    /// okay() false permanently.
    bool solve(std::span<const Lit> assumptions = {});
    bool okay() const { return ok_; }

    bool model_value(Var v) const { return model_[v] != 0; }
    Assignment model_assignment() const { return Assignment(model_); }

    /// Sets branching polarity hints (overwrites saved phases).
    void set_phase_hints(const std::vector<std::uint8_t>& phases);

    std::uint64_t conflicts() const { return total_conflicts_; }
    std::uint64_t decisions() const { return total_decisions_; }

private:
    struct ClauseRec {
        std::vector<Lit> lits;
        double activity = 0.0;
        std::uint64_t id = 0;
        bool learned = false;
        bool deleted = false;
    };
    struct Watcher {
        ClauseRec* clause;
        Lit blocker;
    };

    enum : std::uint8_t { kFalse = 0, kTrue = 1, kUndef = 2 };

    std::uint8_t lit_value(Lit l) const {
        std::uint8_t a = assigns_[l.var()];
        if (a == kUndef) return kUndef;
        return static_cast<std::uint8_t>(a ^ (l.negated() ? 1u : 0u));
    }

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }

    void enqueue(Lit l, ClauseRec* reason);
    ClauseRec* propagate();
    void backtrack_to(int level);
    void analyze(ClauseRec* conflict, std::vector<Lit>& learnt, int& out_level);
    bool search_result(std::span<const Lit> assumptions, bool& answer);
    Var pick_branch_var();

    void attach(ClauseRec* c);
    void detach(ClauseRec* c);
    void reduce_learned();

    void bump_var(Var v);
    void decay_var_activity() { var_inc_ /= 0.95; }
    void bump_clause(ClauseRec* c);
    void decay_clause_activity() { clause_inc_ /= 0.999; }

    // activity-ordered max-heap over variables (ties: lower index wins)
    bool heap_less(Var a, Var b) const {
        if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
        return a < b;
    }
    void heap_insert(Var v);
    void heap_sift_up(std::size_t i);
    void heap_sift_down(std::size_t i);
    Var heap_pop();

    bool ok_ = true;
    std::deque<ClauseRec> arena_;
    std::vector<ClauseRec*> problem_clauses_;
    std::vector<ClauseRec*> learned_clauses_;
    std::uint64_t next_clause_id_ = 0;

    std::vector<std::vector<Watcher>> watches_;  // indexed by lit code
    std::vector<std::uint8_t> assigns_;          // kFalse / kTrue / kUndef
    std::vector<std::uint8_t> phase_;
    std::vector<std::uint8_t> model_;
    std::vector<int> level_;
    std::vector<ClauseRec*> reason_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;

    std::vector<double> activity_;
    double var_inc_ = 1.0;
    double clause_inc_ = 1.0;
    std::vector<Var> heap_;
    std::vector<int> heap_pos_;  // -1 when absent

    std::vector<std::uint8_t> seen_;
    std::uint64_t total_conflicts_ = 0;
    std::uint64_t total_decisions_ = 0;
    std::uint64_t restart_counter_ = 0;
    double max_learned_ = 0.0;
};

/// Luby restart sequence value (1, 1, 2, 1, 1, 2, 4, ...).
std::uint64_t luby(std::uint64_t i);

}  // namespace satproc
