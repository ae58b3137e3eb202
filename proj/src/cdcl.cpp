#include "satproc/cdcl.hpp"

#include <algorithm>
#include <stdexcept>

namespace satproc {

std::uint64_t luby(std::uint64_t i) {
    // descend into the finite subsequence containing index i (0-based)
    std::uint64_t size = 1, seq = 0;
    while (size < i + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != i) {
        size = (size - 1) / 2;
        --seq;
        i %= size;
    }
    return std::uint64_t(1) << seq;
}

CdclSolver::CdclSolver(std::uint32_t num_vars)
    : watches_(2 * static_cast<std::size_t>(num_vars)),
      assigns_(num_vars, kUndef),
      phase_(num_vars, 0),
      model_(num_vars, 0),
      level_(num_vars, 0),
      reason_(num_vars, nullptr),
      activity_(num_vars, 0.0),
      heap_pos_(num_vars, -1),
      seen_(num_vars, 0) {
    heap_.reserve(num_vars);
    for (Var v = 0; v < num_vars; ++v) heap_insert(v);
}

void CdclSolver::set_phase_hints(const std::vector<std::uint8_t>& phases) {
    if (phases.size() != phase_.size()) throw std::invalid_argument("phase hint size mismatch");
    phase_ = phases;
}

// --- variable order heap ---

void CdclSolver::heap_insert(Var v) {
    if (heap_pos_[v] >= 0) return;
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_sift_up(heap_.size() - 1);
}

void CdclSolver::heap_sift_up(std::size_t i) {
    Var v = heap_[i];
    while (i > 0) {
        std::size_t parent = (i - 1) / 2;
        if (!heap_less(v, heap_[parent])) break;
        heap_[i] = heap_[parent];
        heap_pos_[heap_[i]] = static_cast<int>(i);
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = static_cast<int>(i);
}

void CdclSolver::heap_sift_down(std::size_t i) {
    Var v = heap_[i];
    for (;;) {
        std::size_t child = 2 * i + 1;
        if (child >= heap_.size()) break;
        if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
        if (!heap_less(heap_[child], v)) break;
        heap_[i] = heap_[child];
        heap_pos_[heap_[i]] = static_cast<int>(i);
        i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = static_cast<int>(i);
}

Var CdclSolver::heap_pop() {
    Var top = heap_[0];
    heap_pos_[top] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_pos_[heap_[0]] = 0;
        heap_sift_down(0);
    }
    return top;
}

void CdclSolver::bump_var(Var v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
        for (auto& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) heap_sift_up(static_cast<std::size_t>(heap_pos_[v]));
}

void CdclSolver::bump_clause(ClauseRec* c) {
    c->activity += clause_inc_;
    if (c->activity > 1e20) {
        for (ClauseRec* l : learned_clauses_) l->activity *= 1e-20;
        clause_inc_ *= 1e-20;
    }
}

// --- clause management ---

void CdclSolver::attach(ClauseRec* c) {
    watches_[c->lits[0].negation().code()].push_back({c, c->lits[1]});
    watches_[c->lits[1].negation().code()].push_back({c, c->lits[0]});
}

void CdclSolver::detach(ClauseRec* c) {
    for (Lit w : {c->lits[0], c->lits[1]}) {
        auto& list = watches_[w.negation().code()];
        for (std::size_t i = 0; i < list.size(); ++i)
            if (list[i].clause == c) {
                list[i] = list.back();
                list.pop_back();
                break;
            }
    }
}

bool CdclSolver::add_clause(std::span<const Lit> lits) {
    if (!ok_) return false;
    if (decision_level() != 0) throw std::logic_error("add_clause: only at decision level 0");

    std::vector<Lit> c(lits.begin(), lits.end());
    std::sort(c.begin(), c.end());
    // strip duplicates, detect tautologies, drop level-0 false literals
    std::vector<Lit> cleaned;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0 && c[i] == c[i - 1]) continue;
        if (i > 0 && c[i].var() == c[i - 1].var()) return true;  // l and ~l: tautology
        if (c[i].var() >= num_vars()) throw std::out_of_range("add_clause: variable out of range");
        std::uint8_t val = lit_value(c[i]);
        if (val == kTrue) return true;  // satisfied at level 0
        if (val == kFalse) continue;
        cleaned.push_back(c[i]);
    }
    if (cleaned.empty()) {
        ok_ = false;
        return false;
    }
    if (cleaned.size() == 1) {
        enqueue(cleaned[0], nullptr);
        if (propagate() != nullptr) ok_ = false;
        return ok_;
    }
    arena_.push_back(ClauseRec{std::move(cleaned), 0.0, next_clause_id_++, false, false});
    ClauseRec* rec = &arena_.back();
    problem_clauses_.push_back(rec);
    attach(rec);
    return true;
}

// --- propagation ---

void CdclSolver::enqueue(Lit l, ClauseRec* reason) {
    Var v = l.var();
    assigns_[v] = l.negated() ? kFalse : kTrue;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
}

CdclSolver::ClauseRec* CdclSolver::propagate() {
    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++];  // p became true; scan clauses watching ~p
        auto& list = watches_[p.code()];
        std::size_t keep = 0;
        for (std::size_t i = 0; i < list.size(); ++i) {
            Watcher w = list[i];
            if (lit_value(w.blocker) == kTrue) {
                list[keep++] = w;
                continue;
            }
            ClauseRec* c = w.clause;
            auto& cl = c->lits;
            Lit false_lit = p.negation();
            if (cl[0] == false_lit) std::swap(cl[0], cl[1]);
            // cl[1] is the false watched literal now
            if (lit_value(cl[0]) == kTrue) {
                list[keep++] = {c, cl[0]};
                continue;
            }
            bool moved = false;
            for (std::size_t j = 2; j < cl.size(); ++j) {
                if (lit_value(cl[j]) != kFalse) {
                    std::swap(cl[1], cl[j]);
                    watches_[cl[1].negation().code()].push_back({c, cl[0]});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // unit or conflicting
            list[keep++] = {c, cl[0]};
            if (lit_value(cl[0]) == kFalse) {
                for (std::size_t j = i + 1; j < list.size(); ++j) list[keep++] = list[j];
                list.resize(keep);
                qhead_ = trail_.size();
                return c;
            }
            enqueue(cl[0], c);
        }
        list.resize(keep);
    }
    return nullptr;
}

void CdclSolver::backtrack_to(int target) {
    if (decision_level() <= target) return;
    int bound = trail_lim_[target];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
        Var v = trail_[static_cast<std::size_t>(i)].var();
        phase_[v] = assigns_[v];  // phase saving
        assigns_[v] = kUndef;
        reason_[v] = nullptr;
        heap_insert(v);
    }
    trail_.resize(static_cast<std::size_t>(bound));
    trail_lim_.resize(static_cast<std::size_t>(target));
    qhead_ = trail_.size();
}

// --- conflict analysis (first UIP) ---

void CdclSolver::analyze(ClauseRec* conflict, std::vector<Lit>& learnt, int& out_level) {
    learnt.clear();
    learnt.push_back(Lit());  // slot for the asserting literal
    int path_count = 0;
    Lit p;
    bool p_valid = false;
    std::size_t index = trail_.size();

    ClauseRec* reason = conflict;
    do {
        bump_clause(reason);
        for (Lit q : reason->lits) {
            if (p_valid && q == p) continue;
            Var v = q.var();
            if (!seen_[v] && level_[v] > 0) {
                seen_[v] = 1;
                bump_var(v);
                if (level_[v] >= decision_level())
                    ++path_count;
                else
                    learnt.push_back(q);
            }
        }
        while (!seen_[trail_[index - 1].var()]) --index;
        p = trail_[index - 1];
        p_valid = true;
        --index;
        reason = reason_[p.var()];
        seen_[p.var()] = 0;
        --path_count;
    } while (path_count > 0);
    learnt[0] = p.negation();

    out_level = 0;
    if (learnt.size() > 1) {
        std::size_t max_i = 1;
        for (std::size_t i = 2; i < learnt.size(); ++i)
            if (level_[learnt[i].var()] > level_[learnt[max_i].var()]) max_i = i;
        std::swap(learnt[1], learnt[max_i]);
        out_level = level_[learnt[1].var()];
    }
    for (std::size_t i = 1; i < learnt.size(); ++i) seen_[learnt[i].var()] = 0;
}

void CdclSolver::reduce_learned() {
    std::sort(learned_clauses_.begin(), learned_clauses_.end(), [](ClauseRec* a, ClauseRec* b) {
        if (a->activity != b->activity) return a->activity < b->activity;
        return a->id > b->id;
    });
    std::size_t target = learned_clauses_.size() / 2;
    std::vector<ClauseRec*> kept;
    kept.reserve(learned_clauses_.size());
    for (std::size_t i = 0; i < learned_clauses_.size(); ++i) {
        ClauseRec* c = learned_clauses_[i];
        bool locked = reason_[c->lits[0].var()] == c && assigns_[c->lits[0].var()] != kUndef;
        if (i < target && !locked && c->lits.size() > 2) {
            detach(c);
            c->deleted = true;
        } else {
            kept.push_back(c);
        }
    }
    learned_clauses_ = std::move(kept);
}

// --- search ---

Var CdclSolver::pick_branch_var() {
    while (!heap_.empty()) {
        Var v = heap_[0];
        if (assigns_[v] == kUndef) return heap_pop();
        heap_pop();
    }
    return static_cast<Var>(num_vars());  // all assigned
}

bool CdclSolver::search_result(std::span<const Lit> assumptions, bool& answer) {
    // runs one restart-bounded search round; returns true when decided
    std::uint64_t conflict_budget = 100 * luby(restart_counter_);
    std::uint64_t local_conflicts = 0;

    for (;;) {
        ClauseRec* conflict = propagate();
        if (conflict != nullptr) {
            ++total_conflicts_;
            ++local_conflicts;
            if (decision_level() == 0) {
                ok_ = false;
                answer = false;
                return true;
            }
            std::vector<Lit> learnt;
            int back_level = 0;
            analyze(conflict, learnt, back_level);
            // never backtrack into the assumption prefix incompletely: if the
            // asserting level lies inside it, the asserting literal will be
            // re-propagated when those levels are rebuilt
            backtrack_to(back_level);
            if (learnt.size() == 1) {
                enqueue(learnt[0], nullptr);
            } else {
                arena_.push_back(ClauseRec{std::move(learnt), 0.0, next_clause_id_++, true, false});
                ClauseRec* rec = &arena_.back();
                learned_clauses_.push_back(rec);
                attach(rec);
                bump_clause(rec);
                enqueue(rec->lits[0], rec);
            }
            decay_var_activity();
            decay_clause_activity();
            continue;
        }

        if (local_conflicts >= conflict_budget) {
            backtrack_to(0);
            ++restart_counter_;
            return false;  // restart
        }
        if (static_cast<double>(learned_clauses_.size()) > max_learned_) {
            reduce_learned();
            max_learned_ *= 1.1;
        }

        // decide: assumptions first, then activity order
        Lit next;
        bool have_next = false;
        while (decision_level() < static_cast<int>(assumptions.size())) {
            Lit a = assumptions[static_cast<std::size_t>(decision_level())];
            std::uint8_t val = lit_value(a);
            if (val == kTrue) {
                new_decision_level();  // already satisfied; placeholder level
            } else if (val == kFalse) {
                answer = false;  // assumptions contradictory with the formula
                backtrack_to(0);
                return true;
            } else {
                next = a;
                have_next = true;
                break;
            }
        }
        if (!have_next) {
            Var v = pick_branch_var();
            if (v == num_vars()) {
                model_.assign(assigns_.begin(), assigns_.end());
                answer = true;
                backtrack_to(0);
                return true;
            }
            next = Lit(v, phase_[v] == kFalse);
            ++total_decisions_;
        }
        new_decision_level();
        enqueue(next, nullptr);
    }
}

bool CdclSolver::solve(std::span<const Lit> assumptions) {
    if (!ok_) return false;
    for (Lit a : assumptions)
        if (a.var() >= num_vars()) throw std::out_of_range("solve: assumption variable out of range");
    if (max_learned_ < 1.0) max_learned_ = static_cast<double>(problem_clauses_.size()) * 0.5 + 2000.0;
    restart_counter_ = 0;

    bool answer = false;
    while (!search_result(assumptions, answer)) {
    }
    backtrack_to(0);
    return answer;
}

}  // namespace satproc
