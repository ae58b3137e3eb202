#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace satproc {

using Var = std::uint32_t;

/// Exact rational multiplier for count thresholds; comparisons cross-multiply
/// in integers, never floats.
struct Ratio {
    std::int64_t num = 1;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Ratio& a, const Ratio& b) {
        return a.num * b.den == b.num * a.den;
    }
};

/// A literal: variable index plus polarity, packed as 2*var + negated.
class Lit {
public:
    Lit() : code_(0) {}
    Lit(Var var, bool negated) : code_((var << 1) | (negated ? 1u : 0u)) {}

    Var var() const { return code_ >> 1; }
    bool negated() const { return (code_ & 1u) != 0; }
    Lit negation() const { return from_code(code_ ^ 1u); }

    /// Encoded form, usable as a dense array index in [0, 2n).
    std::uint32_t code() const { return code_; }
    static Lit from_code(std::uint32_t code) {
        Lit l;
        l.code_ = code;
        return l;
    }

    /// Signed DIMACS-style value: var 0 positive -> +1, negated -> -1.
    int to_dimacs() const { return negated() ? -static_cast<int>(var() + 1) : static_cast<int>(var() + 1); }

    friend bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
    friend bool operator!=(Lit a, Lit b) { return a.code_ != b.code_; }
    friend bool operator<(Lit a, Lit b) { return a.code_ < b.code_; }

private:
    std::uint32_t code_;
};

/// A total truth assignment over n variables.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t n, bool value = false) : values_(n, value ? 1 : 0) {}
    explicit Assignment(std::vector<std::uint8_t> values) : values_(std::move(values)) {}

    std::size_t size() const { return values_.size(); }
    bool value(Var v) const {
        assert(v < values_.size());
        return values_[v] != 0;
    }
    void set(Var v, bool b) {
        assert(v < values_.size());
        values_[v] = b ? 1 : 0;
    }
    bool satisfies(Lit l) const { return value(l.var()) != l.negated(); }

    const std::vector<std::uint8_t>& raw() const { return values_; }

    std::size_t hamming_distance(const Assignment& other) const {
        assert(size() == other.size());
        std::size_t d = 0;
        for (std::size_t i = 0; i < values_.size(); ++i)
            d += (values_[i] != other.values_[i]) ? 1 : 0;
        return d;
    }

    friend bool operator==(const Assignment& a, const Assignment& b) { return a.values_ == b.values_; }
    friend bool operator!=(const Assignment& a, const Assignment& b) { return !(a == b); }

private:
    std::vector<std::uint8_t> values_;
};

enum class TriState : std::uint8_t { False = 0, True = 1, Unassigned = 2 };

/// A tri-state assignment over n variables.
class PartialAssignment {
public:
    PartialAssignment() = default;
    explicit PartialAssignment(std::size_t n) : values_(n, TriState::Unassigned) {}
    explicit PartialAssignment(const Assignment& total) : values_(total.size()) {
        for (std::size_t i = 0; i < total.size(); ++i)
            values_[i] = total.value(static_cast<Var>(i)) ? TriState::True : TriState::False;
    }

    std::size_t size() const { return values_.size(); }
    TriState state(Var v) const {
        assert(v < values_.size());
        return values_[v];
    }
    bool assigned(Var v) const { return state(v) != TriState::Unassigned; }
    bool value(Var v) const {
        assert(assigned(v));
        return values_[v] == TriState::True;
    }
    void set(Var v, bool b) {
        assert(v < values_.size());
        values_[v] = b ? TriState::True : TriState::False;
    }
    void unassign(Var v) {
        assert(v < values_.size());
        values_[v] = TriState::Unassigned;
    }

    /// TriState of a literal: True/False if its variable is assigned, else Unassigned.
    TriState eval(Lit l) const {
        TriState s = state(l.var());
        if (s == TriState::Unassigned) return s;
        bool val = (s == TriState::True) != l.negated();
        return val ? TriState::True : TriState::False;
    }

    std::size_t assigned_count() const {
        std::size_t c = 0;
        for (TriState s : values_)
            c += (s != TriState::Unassigned) ? 1 : 0;
        return c;
    }

    /// Completes to a total assignment, defaulting unassigned variables to FALSE.
    Assignment complete_with_false() const {
        Assignment a(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i)
            a.set(static_cast<Var>(i), values_[i] == TriState::True);
        return a;
    }

    friend bool operator==(const PartialAssignment& a, const PartialAssignment& b) { return a.values_ == b.values_; }

private:
    std::vector<TriState> values_;
};

}  // namespace satproc
