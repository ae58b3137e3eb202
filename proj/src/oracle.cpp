#include "satproc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace satproc {

std::vector<Assignment> enumerate_solutions(const Formula& f, std::uint32_t var_limit) {
    if (f.num_vars() > var_limit)
        throw std::invalid_argument("enumerate_solutions: n exceeds the oracle limit");
    auto result = enumerate_clauses(f.num_vars(), f.clauses());
    std::vector<Assignment> out;
    out.reserve(result.solutions.size());
    for (std::size_t i = 0; i < result.solutions.size(); ++i)
        out.push_back(result.solutions.assignment(i));
    return out;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

SolutionSpaceSummary summarize_solution_space(const Formula& f, std::uint32_t cluster_link_distance,
                                              std::uint32_t var_limit) {
    if (f.num_vars() > var_limit)
        throw std::invalid_argument("summarize_solution_space: n exceeds the oracle limit");
    if (f.num_vars() > 64)
        throw std::invalid_argument("summarize_solution_space: n exceeds 64");

    SolutionSpaceSummary summary;
    auto result = enumerate_clauses(f.num_vars(), f.clauses());
    summary.solutions = std::move(result.solutions);
    const auto& sols = summary.solutions;
    std::size_t beta = sols.size();
    summary.beta = beta;
    if (beta == 0) return summary;

    const std::uint32_t n = f.num_vars();
    summary.entropy = n == 0 ? 0.0 : std::log2(static_cast<double>(beta)) / static_cast<double>(n);

    std::uint64_t full = n >= 64 ? ~0ULL : (std::uint64_t(1) << n) - 1;
    std::uint64_t all_and = full, all_or = 0;
    for (std::size_t i = 0; i < beta; ++i) {
        std::uint64_t m = sols.mask64(i);
        all_and &= m;
        all_or |= m;
    }
    for (Var v = 0; v < n; ++v) {
        std::uint64_t bit = std::uint64_t(1) << v;
        if (all_and & bit)
            summary.frozen.emplace_back(v, true);
        else if (!(all_or & bit))
            summary.frozen.emplace_back(v, false);
    }

    std::uint32_t radius = 0;
    for (std::size_t i = 0; i < beta; ++i)
        for (std::size_t j = i + 1; j < beta; ++j) {
            auto d = static_cast<std::uint32_t>(std::popcount(sols.mask64(i) ^ sols.mask64(j)));
            radius = std::max(radius, d);
        }
    summary.concentration_radius = radius;

    UnionFind uf(beta);
    if (cluster_link_distance == 1 && n <= 64) {
        std::unordered_map<std::uint64_t, std::size_t> index;
        index.reserve(beta * 2);
        for (std::size_t i = 0; i < beta; ++i) index.emplace(sols.mask64(i), i);
        for (std::size_t i = 0; i < beta; ++i)
            for (Var v = 0; v < n; ++v) {
                auto it = index.find(sols.mask64(i) ^ (std::uint64_t(1) << v));
                if (it != index.end()) uf.unite(i, it->second);
            }
    } else {
        for (std::size_t i = 0; i < beta; ++i)
            for (std::size_t j = i + 1; j < beta; ++j)
                if (std::popcount(sols.mask64(i) ^ sols.mask64(j)) <=
                    static_cast<int>(cluster_link_distance))
                    uf.unite(i, j);
    }
    std::unordered_map<std::size_t, std::vector<std::uint64_t>> groups;
    for (std::size_t i = 0; i < beta; ++i) groups[uf.find(i)].push_back(i);
    for (auto& [root, members] : groups) summary.clusters.push_back(std::move(members));
    std::sort(summary.clusters.begin(), summary.clusters.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return summary;
}

std::size_t overlap_clause_count(const Formula& f, std::span<const Var> u) {
    auto in_u = var_flags(f.num_vars(), u);
    std::size_t count = 0;
    for (const Clause& c : f.clauses()) {
        int inside = 0;
        for (Lit l : c) inside += in_u[l.var()];
        if (inside >= 2) ++count;
    }
    return count;
}

namespace {

bool violates(std::size_t clause_count, double rho, std::size_t set_size) {
    return static_cast<double>(clause_count) >= rho * static_cast<double>(set_size);
}

// Exhaustive search over all size-s subsets. Uses precomputed per-clause
// variable masks; requires n <= 64.
std::optional<std::vector<Var>> search_size_exhaustive(const std::vector<std::uint64_t>& clause_masks,
                                                       std::uint32_t n, std::size_t s, double rho,
                                                       std::size_t& found_count) {
    std::vector<std::uint32_t> combo(s);
    for (std::size_t i = 0; i < s; ++i) combo[i] = static_cast<std::uint32_t>(i);
    for (;;) {
        std::uint64_t mask = 0;
        for (auto v : combo) mask |= std::uint64_t(1) << v;
        std::size_t count = 0;
        for (std::uint64_t cm : clause_masks) count += std::popcount(cm & mask) >= 2 ? 1 : 0;
        if (violates(count, rho, s)) {
            found_count = count;
            return std::vector<Var>(combo.begin(), combo.end());
        }
        // next lexicographic combination
        std::size_t i = s;
        while (i > 0 && combo[i - 1] == n - (s - (i - 1))) --i;
        if (i == 0) return std::nullopt;
        ++combo[i - 1];
        for (std::size_t j = i; j < s; ++j) combo[j] = combo[j - 1] + 1;
    }
}

double binomial_approx(std::uint32_t n, std::size_t s) {
    double r = 1.0;
    for (std::size_t i = 1; i <= s; ++i) r *= static_cast<double>(n - s + i) / static_cast<double>(i);
    return r;
}

}  // namespace

ProportionalityReport check_proportional(const Formula& f, double rho, std::size_t size_cap,
                                         std::size_t exhaustive_size_limit,
                                         std::uint64_t work_budget) {
    if (rho <= 0.0) throw std::invalid_argument("check_proportional: rho must be positive");
    ProportionalityReport report;
    report.rho = rho;
    report.size_cap = size_cap;

    const std::uint32_t n = f.num_vars();
    const std::size_t max_size = std::min<std::size_t>(size_cap, n);
    if (max_size == 0 || f.num_clauses() == 0) {
        report.exhaustive = true;
        return report;
    }

    // decide whether the full subset search fits the budget
    bool can_exhaust = n <= 64 && max_size <= exhaustive_size_limit;
    if (can_exhaust) {
        double work = 0;
        for (std::size_t s = 1; s <= max_size; ++s)
            work += binomial_approx(n, s) * static_cast<double>(f.num_clauses());
        if (work > static_cast<double>(work_budget)) can_exhaust = false;
    }

    if (can_exhaust) {
        std::vector<std::uint64_t> clause_masks;
        clause_masks.reserve(f.num_clauses());
        for (const Clause& c : f.clauses()) {
            std::uint64_t m = 0;
            for (Lit l : c) m |= std::uint64_t(1) << l.var();
            clause_masks.push_back(m);
        }
        for (std::size_t s = 1; s <= max_size; ++s) {
            std::size_t count = 0;
            auto hit = search_size_exhaustive(clause_masks, n, s, rho, count);
            if (hit) {
                report.violating_set = std::move(hit);
                report.violating_clause_count = count;
                report.exhaustive = true;
                return report;
            }
        }
        report.exhaustive = true;
        return report;
    }

    // peeling heuristic: repeatedly remove the variable covering the fewest
    // 2-overlap clauses; dense suffixes of the removal order are candidates
    std::vector<std::vector<std::uint32_t>> clauses_of(n);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
        for (Lit l : f.clause(ci)) clauses_of[l.var()].push_back(static_cast<std::uint32_t>(ci));

    std::vector<std::uint32_t> in_count(f.num_clauses());
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
        in_count[ci] = static_cast<std::uint32_t>(f.clause(ci).width());
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
        if (in_count[ci] >= 2)
            for (Lit l : f.clause(ci)) ++degree[l.var()];

    std::vector<std::uint8_t> removed(n, 0);
    std::vector<Var> order;
    order.reserve(n);
    std::set<std::pair<std::size_t, Var>> queue;
    for (Var v = 0; v < n; ++v) queue.insert({degree[v], v});
    while (!queue.empty()) {
        auto [deg, v] = *queue.begin();
        queue.erase(queue.begin());
        removed[v] = 1;
        order.push_back(v);
        for (std::uint32_t ci : clauses_of[v]) {
            if (in_count[ci] == 2) {
                // the clause leaves the 2-overlap set; its last member loses a unit
                for (Lit l : f.clause(ci)) {
                    Var w = l.var();
                    if (w == v || removed[w]) continue;
                    queue.erase({degree[w], w});
                    --degree[w];
                    queue.insert({degree[w], w});
                }
            }
            --in_count[ci];
        }
    }

    double best_margin = -1.0;
    std::vector<Var> best_set;
    std::size_t best_count = 0;
    std::size_t limit = std::min<std::size_t>(max_size, order.size());
    std::vector<Var> suffix;
    for (std::size_t s = 1; s <= limit; ++s) {
        suffix.assign(order.end() - static_cast<std::ptrdiff_t>(s), order.end());
        std::size_t count = overlap_clause_count(f, suffix);
        double margin = static_cast<double>(count) - rho * static_cast<double>(s);
        if (margin >= 0.0 && margin > best_margin) {
            best_margin = margin;
            best_set = suffix;
            best_count = count;
        }
    }
    if (best_margin >= 0.0) {
        std::sort(best_set.begin(), best_set.end());
        // certify before reporting
        if (violates(overlap_clause_count(f, best_set), rho, best_set.size())) {
            report.violating_set = std::move(best_set);
            report.violating_clause_count = best_count;
        }
    }
    report.exhaustive = false;
    return report;
}

std::pair<std::size_t, std::size_t> count_appearances(const Formula& f, Var v) {
    std::size_t pos = 0, neg = 0;
    for (const Clause& c : f.clauses()) {
        auto l = c.literal_over(v);
        if (!l) continue;
        if (l->negated())
            ++neg;
        else
            ++pos;
    }
    return {pos, neg};
}

}  // namespace satproc
