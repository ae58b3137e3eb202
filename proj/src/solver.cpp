#include "satproc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "satproc/enumerate.hpp"

namespace satproc {

const char* to_string(FailureReason r) {
    switch (r) {
        case FailureReason::ComponentTooLarge:
            return "component_too_large";
        case FailureReason::PropagationConflict:
            return "propagation_conflict";
        case FailureReason::ExhaustiveUnsat:
            return "exhaustive_unsat";
    }
    return "unknown";
}

namespace {

std::uint32_t ceil_log2(std::uint32_t n) {
    std::uint32_t bits = 0;
    while ((std::uint32_t(1) << bits) < n) ++bits;
    return bits;
}

// count * den < num * t
bool below(std::uint64_t count, const Ratio& factor, std::uint64_t t) {
    return static_cast<std::int64_t>(count) * factor.den < factor.num * static_cast<std::int64_t>(t);
}

}  // namespace

std::uint32_t SolverConfig::resolved_reassign_iters(std::uint32_t n) const {
    if (reassign_iters != 0) return reassign_iters;
    return std::max<std::uint32_t>(1, ceil_log2(std::max<std::uint32_t>(n, 2)));
}

std::uint32_t SolverConfig::resolved_component_cap(std::uint32_t n) const {
    if (component_cap != 0) return component_cap;
    return std::max<std::uint32_t>(1, 3 * ceil_log2(std::max<std::uint32_t>(n, 2)));
}

std::vector<std::uint64_t> SolverConfig::resolved_sweep(std::uint32_t n, std::size_t m) const {
    if (t != 0) return {t};
    if (!t_sweep.empty()) return t_sweep;
    double ratio = n == 0 ? 0.0 : static_cast<double>(m) / static_cast<double>(n);
    std::vector<std::uint64_t> sweep;
    for (double b : {0.05, 0.1, 0.2, 0.4}) {
        auto v = static_cast<std::uint64_t>(std::ceil(b * ratio));
        sweep.push_back(std::max<std::uint64_t>(1, v));
    }
    sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
    return sweep;
}

Assignment majority_vote(const Formula& f) {
    std::vector<std::int64_t> balance(f.num_vars(), 0);
    for (const Clause& c : f.clauses())
        for (Lit l : c) balance[l.var()] += l.negated() ? -1 : 1;
    Assignment a(f.num_vars());
    for (Var v = 0; v < f.num_vars(); ++v) a.set(v, balance[v] > 0);
    return a;
}

namespace {

// support counts of every variable w.r.t. a total assignment, full formula
std::vector<std::uint64_t> all_supports(const Formula& f, const Assignment& a) {
    std::vector<std::uint64_t> counts(f.num_vars(), 0);
    for (const Clause& c : f.clauses()) {
        auto s = supporter(c, a);
        if (s) ++counts[*s];
    }
    return counts;
}

}  // namespace

Assignment reassignment(const Formula& f, const Assignment& start, const SolverConfig& cfg,
                        std::vector<std::uint64_t>* flips_per_round) {
    if (start.size() != f.num_vars()) throw std::invalid_argument("reassignment: size mismatch");
    std::uint64_t t = cfg.t;
    if (t == 0) throw std::invalid_argument("reassignment: t must be set");
    Assignment current = start;
    std::uint32_t iters = cfg.resolved_reassign_iters(f.num_vars());

    for (std::uint32_t round = 0; round < iters; ++round) {
        std::uint64_t flips = 0;
        if (cfg.flip_mode == FlipMode::Batch) {
            auto counts = all_supports(f, current);
            Assignment next = current;
            for (Var v = 0; v < f.num_vars(); ++v)
                if (below(counts[v], cfg.reassign_flip_factor, t)) {
                    next.set(v, !current.value(v));
                    ++flips;
                }
            current = std::move(next);
        } else {
            // sequential: supports re-measured against the evolving assignment
            std::vector<std::vector<std::uint32_t>> occ(f.num_vars());
            for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
                for (Lit l : f.clause(ci)) occ[l.var()].push_back(static_cast<std::uint32_t>(ci));
            for (Var v = 0; v < f.num_vars(); ++v) {
                std::uint64_t count = 0;
                for (std::uint32_t ci : occ[v])
                    if (supporter(f.clause(ci), current) == std::optional<Var>(v)) ++count;
                if (below(count, cfg.reassign_flip_factor, t)) {
                    current.set(v, !current.value(v));
                    ++flips;
                }
            }
        }
        if (flips_per_round != nullptr) flips_per_round->push_back(flips);
        if (flips == 0) break;
    }
    return current;
}

PartialAssignment unassignment(const Formula& f, const Assignment& psi, const SolverConfig& cfg,
                               std::vector<Var>* order) {
    if (psi.size() != f.num_vars()) throw std::invalid_argument("unassignment: size mismatch");
    std::uint64_t t = cfg.t;
    if (t == 0) throw std::invalid_argument("unassignment: t must be set");
    const std::uint32_t n = f.num_vars();
    PartialAssignment xi(psi);

    std::vector<std::vector<std::uint32_t>> occ(n);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
        for (Lit l : f.clause(ci)) occ[l.var()].push_back(static_cast<std::uint32_t>(ci));

    // per-clause: count of true literals, count of unassigned variables
    std::vector<std::uint32_t> n_true(f.num_clauses(), 0), n_unassigned(f.num_clauses(), 0);
    std::vector<std::uint64_t> support(n, 0);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
        const Clause& c = f.clause(ci);
        Var sup_var = 0;
        for (Lit l : c)
            if (psi.satisfies(l)) {
                ++n_true[ci];
                sup_var = l.var();
            }
        if (n_true[ci] == 1) ++support[sup_var];
    }

    std::set<Var> violators;
    for (Var v = 0; v < n; ++v)
        if (below(support[v], cfg.unassign_factor, t)) violators.insert(v);

    while (!violators.empty()) {
        Var v;
        if (cfg.unassign_schedule == RemovalSchedule::LowestIndexFirst) {
            v = *violators.begin();
            violators.erase(violators.begin());
        } else {
            auto it = std::prev(violators.end());
            v = *it;
            violators.erase(it);
        }
        if (order != nullptr) order->push_back(v);
        bool was_true_value = xi.value(v);
        xi.unassign(v);
        for (std::uint32_t ci : occ[v]) {
            const Clause& c = f.clause(ci);
            Lit own = *c.literal_over(v);
            bool own_true = own.negated() ? !was_true_value : was_true_value;
            // a clause is supported iff exactly one true literal and no
            // unassigned variable; losing v can only remove support
            if (n_true[ci] == 1 && n_unassigned[ci] == 0 && !own_true) {
                for (Lit l : c)
                    if (l.var() != v && xi.assigned(l.var()) && xi.eval(l) == TriState::True) {
                        --support[l.var()];
                        if (below(support[l.var()], cfg.unassign_factor, t))
                            violators.insert(l.var());
                        break;
                    }
            }
            ++n_unassigned[ci];
            if (own_true) --n_true[ci];
        }
    }
    return xi;
}

PropagationResult unit_propagation(const ResidualFormula& residual, const PartialAssignment& xi) {
    PropagationResult result;
    result.assignment = xi;
    result.rounds.assign(residual.n, 0);

    const auto& clauses = residual.clauses;
    std::vector<std::vector<std::uint32_t>> occ(residual.n);
    for (std::size_t ci = 0; ci < clauses.size(); ++ci)
        for (Lit l : clauses[ci]) occ[l.var()].push_back(static_cast<std::uint32_t>(ci));

    std::vector<std::uint32_t> n_false(clauses.size(), 0), n_true(clauses.size(), 0);
    for (std::size_t ci = 0; ci < clauses.size(); ++ci)
        for (Lit l : clauses[ci]) {
            TriState s = result.assignment.eval(l);
            if (s == TriState::True) ++n_true[ci];
            if (s == TriState::False) ++n_false[ci];
        }

    auto is_unit = [&](std::size_t ci) {
        return n_true[ci] == 0 &&
               n_false[ci] + 1 == static_cast<std::uint32_t>(clauses[ci].width());
    };

    std::vector<std::uint32_t> frontier;
    for (std::size_t ci = 0; ci < clauses.size(); ++ci)
        if (is_unit(ci)) frontier.push_back(static_cast<std::uint32_t>(ci));

    std::uint32_t round = 0;
    while (!frontier.empty()) {
        ++round;
        // gather this round's forced literals; conflicting forces = conflict
        std::vector<Lit> forced;
        std::vector<std::int8_t> wanted(residual.n, -1);
        for (std::uint32_t ci : frontier) {
            if (!is_unit(ci)) continue;  // may have been satisfied meanwhile
            for (Lit l : clauses[ci]) {
                if (result.assignment.assigned(l.var())) continue;
                std::int8_t want = l.negated() ? 0 : 1;
                if (wanted[l.var()] == -1) {
                    wanted[l.var()] = want;
                    forced.push_back(l);
                } else if (wanted[l.var()] != want) {
                    result.conflict = true;
                    return result;
                }
                break;
            }
        }
        frontier.clear();
        for (Lit l : forced) {
            result.assignment.set(l.var(), !l.negated());
            result.rounds[l.var()] = round;
            for (std::uint32_t ci : occ[l.var()]) {
                Lit own = *clauses[ci].literal_over(l.var());
                if (result.assignment.eval(own) == TriState::True) {
                    ++n_true[ci];
                } else {
                    ++n_false[ci];
                    if (n_true[ci] == 0 &&
                        n_false[ci] == static_cast<std::uint32_t>(clauses[ci].width())) {
                        result.conflict = true;
                        return result;
                    }
                    if (is_unit(ci)) frontier.push_back(ci);
                }
            }
        }
    }
    result.round_count = round;

    // propagation-free remainder: unsatisfied clauses minus false literals
    result.remaining.n = residual.n;
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
        if (n_true[ci] > 0) continue;
        std::vector<Lit> lits;
        for (Lit l : clauses[ci])
            if (!result.assignment.assigned(l.var())) lits.push_back(l);
        result.remaining.clauses.emplace_back(std::move(lits));
    }
    return result;
}

ComponentSearchResult exhaustive_component_search(const ResidualFormula& residual,
                                                  const PartialAssignment& xi,
                                                  const SolverConfig& cfg) {
    ComponentSearchResult result;
    const std::uint32_t cap = cfg.resolved_component_cap(residual.n);
    auto components = connected_components(residual.n, residual.clauses);
    for (const auto& comp : components) result.component_sizes.push_back(comp.size());

    Assignment merged = xi.complete_with_false();

    std::vector<std::int32_t> local_index(residual.n, -1);
    for (const auto& comp : components) {
        if (comp.size() > cap) {
            result.failure = FailureReason::ComponentTooLarge;
            result.offending_component = comp.size();
            return result;
        }
        for (std::size_t i = 0; i < comp.size(); ++i) local_index[comp[i]] = static_cast<std::int32_t>(i);
        std::vector<Clause> local_clauses;
        for (const Clause& c : residual.clauses) {
            if (local_index[c[0].var()] < 0) continue;
            std::vector<Lit> lits;
            lits.reserve(c.width());
            bool mine = true;
            for (Lit l : c) {
                if (local_index[l.var()] < 0) {
                    mine = false;
                    break;
                }
                lits.emplace_back(static_cast<Var>(local_index[l.var()]), l.negated());
            }
            if (mine) local_clauses.emplace_back(std::move(lits));
        }
        auto enumeration = enumerate_clauses(static_cast<std::uint32_t>(comp.size()), local_clauses, 1);
        if (enumeration.solutions.empty()) {
            result.failure = FailureReason::ExhaustiveUnsat;
            result.offending_component = comp.size();
            return result;
        }
        for (std::size_t i = 0; i < comp.size(); ++i)
            merged.set(comp[i], enumeration.solutions.bit(0, static_cast<Var>(i)));
        for (Var v : comp) local_index[v] = -1;
    }
    result.assignment = std::move(merged);
    return result;
}

SolveOutcome solve(const Formula& f, const SolverConfig& cfg) {
    SolveOutcome outcome;
    Assignment maj = majority_vote(f);
    auto sweep = cfg.resolved_sweep(f.num_vars(), f.num_clauses());

    for (std::uint64_t t : sweep) {
        SolverConfig attempt = cfg;
        attempt.t = t;
        outcome.attempted_t.push_back(t);
        outcome.t_used = t;
        outcome.stages = SolveStages{};

        Assignment pi = reassignment(f, maj, attempt, &outcome.stages.flips_per_round);
        PartialAssignment xi = unassignment(f, pi, attempt, &outcome.stages.unassign_order);
        outcome.stages.unassigned_count = f.num_vars() - xi.assigned_count();

        std::vector<Var> assigned_vars;
        for (Var v = 0; v < f.num_vars(); ++v)
            if (xi.assigned(v)) assigned_vars.push_back(v);
        auto residual = restrict_and_simplify(f, assigned_vars, xi.complete_with_false());
        if (!residual) {
            outcome.failure = FailureReason::PropagationConflict;
            continue;
        }
        auto propagation = unit_propagation(*residual, xi);
        outcome.stages.propagation_rounds = propagation.round_count;
        if (propagation.conflict) {
            outcome.failure = FailureReason::PropagationConflict;
            continue;
        }
        auto search = exhaustive_component_search(propagation.remaining, propagation.assignment,
                                                  attempt);
        outcome.stages.component_sizes = search.component_sizes;
        if (!search.assignment) {
            outcome.failure = *search.failure;
            continue;
        }
        if (!satisfies(f, *search.assignment))
            throw std::logic_error("solve: verification gate failed");  // must never happen
        outcome.stages.majority_disagreement = maj.hamming_distance(*search.assignment);
        outcome.result = std::move(*search.assignment);
        return outcome;
    }
    return outcome;
}

}  // namespace satproc
