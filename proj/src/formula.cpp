#include "satproc/formula.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace satproc {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
    if (lits_.empty()) throw std::invalid_argument("Clause: empty literal list");
    std::sort(lits_.begin(), lits_.end(),
              [](Lit a, Lit b) { return a.var() < b.var(); });
    for (std::size_t i = 1; i < lits_.size(); ++i)
        if (lits_[i].var() == lits_[i - 1].var())
            throw std::invalid_argument("Clause: repeated variable");
}

bool Clause::contains_var(Var v) const {
    return literal_over(v).has_value();
}

std::optional<Lit> Clause::literal_over(Var v) const {
    auto it = std::lower_bound(lits_.begin(), lits_.end(), v,
                               [](Lit l, Var x) { return l.var() < x; });
    if (it != lits_.end() && it->var() == v) return *it;
    return std::nullopt;
}

std::size_t ClauseHash::operator()(const Clause& c) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Lit l : c) {
        h ^= l.code() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
}

Formula Formula::from_clauses(std::uint32_t n, std::uint32_t k, std::vector<Clause> clauses) {
    Formula f(n, k);
    for (auto& c : clauses) f.append(std::move(c));
    return f;
}

void Formula::append(Clause c) {
    if (c.width() != k_) throw std::invalid_argument("Formula::append: clause width != k");
    if (c.max_var() >= n_) throw std::invalid_argument("Formula::append: variable out of range");
    if (!dedup_.insert(c).second) throw std::invalid_argument("Formula::append: duplicate clause");
    clauses_.push_back(std::move(c));
}

bool evaluate(const Clause& clause, const Assignment& a) {
    for (Lit l : clause)
        if (a.satisfies(l)) return true;
    return false;
}

bool satisfies(const Formula& f, const Assignment& a) {
    for (const Clause& c : f.clauses())
        if (!evaluate(c, a)) return false;
    return true;
}

std::optional<Var> supporter(const Clause& clause, const Assignment& a) {
    std::optional<Var> found;
    for (Lit l : clause) {
        if (a.satisfies(l)) {
            if (found) return std::nullopt;
            found = l.var();
        }
    }
    return found;
}

std::size_t support_count(const Formula& f, const Assignment& a, Var v) {
    if (v >= f.num_vars()) throw std::out_of_range("support_count: variable out of range");
    std::size_t count = 0;
    for (const Clause& c : f.clauses())
        if (c.contains_var(v) && supporter(c, a) == std::optional<Var>(v)) ++count;
    return count;
}

std::size_t support_count(const Formula& f, const Assignment& a, Var v, std::span<const Var> scope) {
    if (v >= f.num_vars()) throw std::out_of_range("support_count: variable out of range");
    auto in_scope = var_flags(f.num_vars(), scope);
    std::size_t count = 0;
    for (const Clause& c : f.clauses()) {
        bool inside = true;
        for (Lit l : c)
            if (!in_scope[l.var()]) {
                inside = false;
                break;
            }
        if (inside && c.contains_var(v) && supporter(c, a) == std::optional<Var>(v)) ++count;
    }
    return count;
}

std::size_t support_count_partial(const Formula& f, const PartialAssignment& xi, Var v) {
    if (v >= f.num_vars()) throw std::out_of_range("support_count_partial: variable out of range");
    if (!xi.assigned(v)) throw std::logic_error("support_count_partial: variable is unassigned");
    std::size_t count = 0;
    for (const Clause& c : f.clauses()) {
        auto own = c.literal_over(v);
        if (!own || xi.eval(*own) != TriState::True) continue;
        bool others_false = true;
        for (Lit l : c) {
            if (l.var() == v) continue;
            if (xi.eval(l) != TriState::False) {  // unassigned co-literal disqualifies
                others_false = false;
                break;
            }
        }
        if (others_false) ++count;
    }
    return count;
}

Formula induced_subformula(const Formula& f, std::span<const Var> z) {
    auto in_z = var_flags(f.num_vars(), z);
    Formula out(f.num_vars(), f.width());
    for (const Clause& c : f.clauses()) {
        bool inside = true;
        for (Lit l : c)
            if (!in_z[l.var()]) {
                inside = false;
                break;
            }
        if (inside) out.append(c);
    }
    return out;
}

std::optional<ResidualFormula> restrict_and_simplify(const Formula& f, std::span<const Var> a,
                                                     const Assignment& phi) {
    auto assigned = var_flags(f.num_vars(), a);
    ResidualFormula out;
    out.n = f.num_vars();
    for (const Clause& c : f.clauses()) {
        bool satisfied = false;
        std::vector<Lit> remaining;
        for (Lit l : c) {
            if (assigned[l.var()]) {
                if (phi.satisfies(l)) {
                    satisfied = true;
                    break;
                }
                // false literal over an assigned variable: drop it
            } else {
                remaining.push_back(l);
            }
        }
        if (satisfied) continue;
        if (remaining.empty()) return std::nullopt;  // empty clause: conflict
        out.clauses.emplace_back(std::move(remaining));
    }
    return out;
}

InducedGraph induced_graph(const Formula& f) {
    InducedGraph g;
    g.n = f.num_vars();
    g.adjacency.assign(g.n, {});
    for (const Clause& c : f.clauses()) {
        const auto& lits = c.literals();
        for (std::size_t i = 0; i < lits.size(); ++i)
            for (std::size_t j = i + 1; j < lits.size(); ++j) {
                g.adjacency[lits[i].var()].push_back(lits[j].var());
                g.adjacency[lits[j].var()].push_back(lits[i].var());
            }
    }
    for (auto& nbrs : g.adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return g;
}

std::vector<std::vector<Var>> connected_components(std::uint32_t n, const std::vector<Clause>& clauses) {
    // union-find over the variables touched by clauses
    std::vector<Var> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<std::uint8_t> touched(n, 0);

    auto find = [&](Var x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](Var a, Var b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    for (const Clause& c : clauses) {
        const auto& lits = c.literals();
        touched[lits[0].var()] = 1;
        for (std::size_t i = 1; i < lits.size(); ++i) {
            touched[lits[i].var()] = 1;
            unite(lits[0].var(), lits[i].var());
        }
    }

    std::vector<std::vector<Var>> groups(n);
    for (Var v = 0; v < n; ++v)
        if (touched[v]) groups[find(v)].push_back(v);

    std::vector<std::vector<Var>> components;
    for (auto& g : groups)
        if (!g.empty()) components.push_back(std::move(g));
    std::sort(components.begin(), components.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return components;
}

std::vector<std::vector<Var>> connected_components(const Formula& f) {
    return connected_components(f.num_vars(), f.clauses());
}

std::vector<std::uint8_t> var_flags(std::uint32_t n, std::span<const Var> vars) {
    std::vector<std::uint8_t> flags(n, 0);
    for (Var v : vars) {
        if (v >= n) throw std::out_of_range("var_flags: variable out of range");
        flags[v] = 1;
    }
    return flags;
}

}  // namespace satproc
