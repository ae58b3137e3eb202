#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "satproc/formula.hpp"

namespace satproc {

/// Bit-packed list of total assignments over n variables.
class SolutionList {
public:
    SolutionList() = default;
    explicit SolutionList(std::uint32_t n) : n_(n), stride_((n + 63) / 64) {}

    std::uint32_t num_vars() const { return n_; }
    std::size_t size() const { return stride_ == 0 ? count_ : words_.size() / stride_; }
    bool empty() const { return size() == 0; }

    bool bit(std::size_t idx, Var v) const {
        return ((words_[idx * stride_ + v / 64] >> (v % 64)) & 1) != 0;
    }
    Assignment assignment(std::size_t idx) const {
        Assignment a(n_);
        for (Var v = 0; v < n_; ++v) a.set(v, bit(idx, v));
        return a;
    }
    bool satisfies(std::size_t idx, Lit l) const { return bit(idx, l.var()) != l.negated(); }

    void push(const std::vector<std::uint8_t>& values);
    /// Keeps only the solutions for which keep(index) is true; preserves order.
    template <typename Pred>
    void filter(Pred keep) {
        std::size_t out = 0, total = size();
        for (std::size_t i = 0; i < total; ++i) {
            if (!keep(i)) continue;
            if (out != i)
                for (std::size_t w = 0; w < stride_; ++w)
                    words_[out * stride_ + w] = words_[i * stride_ + w];
            ++out;
        }
        words_.resize(out * stride_);
        if (stride_ == 0) count_ = 0;
    }

    /// Low 64 bits of solution idx (variable v at bit v); valid for n <= 64.
    std::uint64_t mask64(std::size_t idx) const { return stride_ ? words_[idx * stride_] : 0; }

private:
    std::uint32_t n_ = 0;
    std::size_t stride_ = 0;
    std::size_t count_ = 0;  // used when n == 0
    std::vector<std::uint64_t> words_;
};

struct EnumerationResult {
    SolutionList solutions;
    bool complete = false;  // all solutions found within cap and budget
};

constexpr std::uint64_t kNoLimit = std::numeric_limits<std::uint64_t>::max();

/// Enumerates satisfying assignments of a clause set (any widths) by
/// depth-first search with unit propagation. Branches on the lowest
/// unassigned variable, FALSE before TRUE, so complete output is in
/// lexicographic order. Stops early once solution_cap solutions are found or
/// decision_budget branch decisions are spent (complete=false either way).
EnumerationResult enumerate_clauses(std::uint32_t n, const std::vector<Clause>& clauses,
                                    std::uint64_t solution_cap = kNoLimit,
                                    std::uint64_t decision_budget = kNoLimit);

}  // namespace satproc
