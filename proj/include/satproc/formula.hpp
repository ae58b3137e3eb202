#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "satproc/types.hpp"

namespace satproc {

/// A disjunction of literals over distinct variables, stored in ascending
/// variable order so equality and hashing are structural.
class Clause {
public:
    Clause() = default;
    explicit Clause(std::vector<Lit> lits);
    Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}

    std::size_t width() const { return lits_.size(); }
    const std::vector<Lit>& literals() const { return lits_; }
    Lit operator[](std::size_t i) const { return lits_[i]; }
    auto begin() const { return lits_.begin(); }
    auto end() const { return lits_.end(); }

    bool contains_var(Var v) const;
    /// The literal over v, if v appears in the clause.
    std::optional<Lit> literal_over(Var v) const;
    Var max_var() const { return lits_.back().var(); }

    friend bool operator==(const Clause& a, const Clause& b) { return a.lits_ == b.lits_; }
    friend bool operator!=(const Clause& a, const Clause& b) { return !(a == b); }

private:
    std::vector<Lit> lits_;
};

struct ClauseHash {
    std::size_t operator()(const Clause& c) const;
};

/// A width-k CNF formula over n variables. Clause order is meaningful (it
/// records acceptance order); duplicate insertion is an error.
class Formula {
public:
    Formula() : n_(0), k_(0) {}
    Formula(std::uint32_t n, std::uint32_t k) : n_(n), k_(k) {}
    static Formula from_clauses(std::uint32_t n, std::uint32_t k, std::vector<Clause> clauses);

    std::uint32_t num_vars() const { return n_; }
    std::uint32_t width() const { return k_; }
    std::size_t num_clauses() const { return clauses_.size(); }
    bool empty() const { return clauses_.empty(); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    const Clause& clause(std::size_t i) const { return clauses_[i]; }

    /// Appends a clause; throws std::invalid_argument on width mismatch,
    /// out-of-range variable, or duplicate clause.
    void append(Clause c);
    bool contains(const Clause& c) const { return dedup_.count(c) != 0; }

    friend bool operator==(const Formula& a, const Formula& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.clauses_ == b.clauses_;
    }

private:
    std::uint32_t n_;
    std::uint32_t k_;
    std::vector<Clause> clauses_;
    std::unordered_set<Clause, ClauseHash> dedup_;
};

/// Post-simplification formula: clause widths range over 1..k and no literal
/// mentions an assigned variable. Empty clauses are reported as conflicts at
/// construction time, never stored.
struct ResidualFormula {
    std::uint32_t n = 0;
    std::vector<Clause> clauses;
};

// --- CNF semantics ---

bool evaluate(const Clause& clause, const Assignment& a);
bool satisfies(const Formula& f, const Assignment& a);

/// The variable whose literal is the unique true literal of the clause under a,
/// if the clause has exactly one true literal.
std::optional<Var> supporter(const Clause& clause, const Assignment& a);

/// Number of clauses in which v's literal is the unique true literal under a.
std::size_t support_count(const Formula& f, const Assignment& a, Var v);
/// Same, restricted to F[scope] (clauses whose variables all lie in scope).
std::size_t support_count(const Formula& f, const Assignment& a, Var v, std::span<const Var> scope);

/// Support under a partial assignment: v's literal must be true and every
/// other literal assigned and false. v must be assigned.
std::size_t support_count_partial(const Formula& f, const PartialAssignment& xi, Var v);

/// F[Z]: exactly the clauses whose variables all belong to Z, order preserved.
Formula induced_subformula(const Formula& f, std::span<const Var> z);

/// F_out(A, phi): assign the variables of A according to phi and simplify.
/// Returns std::nullopt if some clause becomes empty (phi restricted to A
/// contradicts f).
std::optional<ResidualFormula> restrict_and_simplify(const Formula& f, std::span<const Var> a,
                                                     const Assignment& phi);

/// The graph induced by a formula: vertices are variables, with an edge when
/// two variables share a clause.
struct InducedGraph {
    std::uint32_t n = 0;
    std::vector<std::vector<Var>> adjacency;  // sorted, no duplicates
};

InducedGraph induced_graph(const Formula& f);

/// Connected components of the induced graph, covering the non-isolated
/// variables only; sorted by size descending, then lexicographically.
std::vector<std::vector<Var>> connected_components(const Formula& f);
std::vector<std::vector<Var>> connected_components(std::uint32_t n, const std::vector<Clause>& clauses);

/// Dense membership flags for a variable set.
std::vector<std::uint8_t> var_flags(std::uint32_t n, std::span<const Var> vars);

}  // namespace satproc
