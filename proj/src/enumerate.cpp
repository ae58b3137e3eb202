#include "satproc/enumerate.hpp"

namespace satproc {

void SolutionList::push(const std::vector<std::uint8_t>& values) {
    if (stride_ == 0) {
        ++count_;
        return;
    }
    std::size_t base = words_.size();
    words_.resize(base + stride_, 0);
    for (Var v = 0; v < n_; ++v)
        if (values[v]) words_[base + v / 64] |= std::uint64_t(1) << (v % 64);
}

namespace {

class Enumerator {
public:
    Enumerator(std::uint32_t n, const std::vector<Clause>& clauses, std::uint64_t cap,
               std::uint64_t budget)
        : n_(n),
          clauses_(clauses),
          cap_(cap),
          budget_(budget),
          occ_(2 * static_cast<std::size_t>(n)),
          assigns_(n, 2),
          n_false_(clauses.size(), 0),
          n_true_(clauses.size(), 0),
          result_{SolutionList(n), false} {
        for (std::size_t ci = 0; ci < clauses_.size(); ++ci)
            for (Lit l : clauses_[ci]) occ_[l.code()].push_back(static_cast<std::uint32_t>(ci));
    }

    EnumerationResult run() {
        // top-level units first; an immediate conflict means no solutions
        if (initial_units()) {
            dfs(0);
        }
        undo_to(0);
        result_.complete = !stopped_;
        return std::move(result_);
    }

private:
    bool initial_units() {
        for (std::size_t ci = 0; ci < clauses_.size(); ++ci)
            if (clauses_[ci].width() == 1) units_.push_back(static_cast<std::uint32_t>(ci));
        return flush_units();
    }

    // assigns l and updates clause counters; false on conflict. Counter
    // updates always complete so undo_to stays symmetric.
    bool assign(Lit l) {
        assigns_[l.var()] = l.negated() ? 0 : 1;
        trail_.push_back(l.var());
        for (std::uint32_t ci : occ_[l.code()]) ++n_true_[ci];
        bool conflict = false;
        for (std::uint32_t ci : occ_[l.negation().code()]) {
            ++n_false_[ci];
            if (n_true_[ci] != 0) continue;
            if (n_false_[ci] == clauses_[ci].width())
                conflict = true;
            else if (n_false_[ci] + 1 == clauses_[ci].width())
                units_.push_back(ci);
        }
        return !conflict;
    }

    bool flush_units() {
        while (!units_.empty()) {
            std::uint32_t ci = units_.back();
            units_.pop_back();
            if (n_true_[ci] > 0) continue;  // became satisfied meanwhile
            Lit unit;
            bool found = false;
            for (Lit l : clauses_[ci])
                if (assigns_[l.var()] == 2) {
                    unit = l;
                    found = true;
                    break;
                }
            if (!found) return false;  // fully assigned and unsatisfied
            if (!assign(unit)) return false;
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            Var v = trail_.back();
            trail_.pop_back();
            Lit l(v, assigns_[v] == 0);
            for (std::uint32_t ci : occ_[l.code()]) --n_true_[ci];
            for (std::uint32_t ci : occ_[l.negation().code()]) --n_false_[ci];
            assigns_[v] = 2;
        }
        units_.clear();
    }

    void dfs(Var from) {
        if (stopped_) return;
        Var v = from;
        while (v < n_ && assigns_[v] != 2) ++v;
        if (v == n_) {
            if (result_.solutions.size() >= cap_) {
                stopped_ = true;
                return;
            }
            result_.solutions.push(assigns_);
            if (result_.solutions.size() >= cap_) stopped_ = true;
            return;
        }
        for (int value = 0; value < 2 && !stopped_; ++value) {
            if (budget_ == 0) {
                stopped_ = true;
                return;
            }
            --budget_;
            std::size_t mark = trail_.size();
            units_.clear();
            if (assign(Lit(v, value == 0)) && flush_units()) dfs(v + 1);
            undo_to(mark);
        }
    }

    std::uint32_t n_;
    const std::vector<Clause>& clauses_;
    std::uint64_t cap_;
    std::uint64_t budget_;
    std::vector<std::vector<std::uint32_t>> occ_;
    std::vector<std::uint8_t> assigns_;  // 0 false, 1 true, 2 unassigned
    std::vector<std::uint32_t> n_false_;
    std::vector<std::uint32_t> n_true_;
    std::vector<std::uint32_t> units_;
    std::vector<Var> trail_;
    EnumerationResult result_;
    bool stopped_ = false;
};

}  // namespace

EnumerationResult enumerate_clauses(std::uint32_t n, const std::vector<Clause>& clauses,
                                    std::uint64_t solution_cap, std::uint64_t decision_budget) {
    Enumerator e(n, clauses, solution_cap, decision_budget);
    return e.run();
}

}  // namespace satproc
