#include "satproc/corebuilder.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace satproc {

void CoreParams::validate() const {
    if (t < 1) throw std::invalid_argument("core params: t must be positive");
    auto positive = [](const Ratio& r) { return r.num > 0 && r.den > 0; };
    if (!positive(init_factor) || !positive(keep_factor) || !positive(core_out_factor) ||
        !positive(core_support_factor))
        throw std::invalid_argument("core params: factors must be positive");
    // keep_factor <= init_factor, cross-multiplied
    if (keep_factor.num * init_factor.den > init_factor.num * keep_factor.den)
        throw std::invalid_argument("core params: keep_factor must not exceed init_factor");
    if (core_support_factor.num > core_support_factor.den)
        throw std::invalid_argument("core params: core_support_factor must be at most 1");
}

namespace {

// count * den < num * t  ("supports fewer than factor*t")
bool below_threshold(std::uint64_t count, const Ratio& factor, std::uint64_t t) {
    return static_cast<std::int64_t>(count) * factor.den <
           factor.num * static_cast<std::int64_t>(t);
}

// count * den > num * t  ("appears in more than factor*t")
bool above_threshold(std::uint64_t count, const Ratio& factor, std::uint64_t t) {
    return static_cast<std::int64_t>(count) * factor.den >
           factor.num * static_cast<std::int64_t>(t);
}

std::vector<std::vector<std::uint32_t>> occurrence_lists(const Formula& f) {
    std::vector<std::vector<std::uint32_t>> occ(f.num_vars());
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
        for (Lit l : f.clause(ci)) occ[l.var()].push_back(static_cast<std::uint32_t>(ci));
    return occ;
}

std::vector<std::optional<Var>> clause_supporters(const Formula& f, const Assignment& psi) {
    std::vector<std::optional<Var>> sup(f.num_clauses());
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) sup[ci] = supporter(f.clause(ci), psi);
    return sup;
}

Var take_scheduled(std::set<Var>& violators, RemovalSchedule schedule) {
    Var v;
    if (schedule == RemovalSchedule::LowestIndexFirst) {
        v = *violators.begin();
        violators.erase(violators.begin());
    } else {
        auto it = std::prev(violators.end());
        v = *it;
        violators.erase(it);
    }
    return v;
}

}  // namespace

std::vector<Var> build_expanding_set(const Formula& f, const Assignment& psi, const CoreParams& params,
                                     RemovalSchedule schedule) {
    params.validate();
    if (psi.size() != f.num_vars())
        throw std::invalid_argument("build_expanding_set: psi size mismatch");
    const std::uint32_t n = f.num_vars();
    auto occ = occurrence_lists(f);
    auto sup = clause_supporters(f, psi);

    // phase 1: support counted over the whole formula
    std::vector<std::uint64_t> support_full(n, 0);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
        if (sup[ci]) ++support_full[*sup[ci]];
    std::vector<std::uint8_t> in_set(n, 0);
    for (Var v = 0; v < n; ++v)
        if (!below_threshold(support_full[v], params.init_factor, params.t)) in_set[v] = 1;

    // phase 2: peel on support within F[Z]
    std::vector<std::uint32_t> outside_vars(f.num_clauses(), 0);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
        for (Lit l : f.clause(ci)) outside_vars[ci] += in_set[l.var()] ? 0 : 1;
    std::vector<std::uint64_t> support_in(n, 0);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
        if (outside_vars[ci] == 0 && sup[ci] && in_set[*sup[ci]]) ++support_in[*sup[ci]];

    std::set<Var> violators;
    for (Var v = 0; v < n; ++v)
        if (in_set[v] && below_threshold(support_in[v], params.keep_factor, params.t))
            violators.insert(v);

    std::size_t iterations = 0;
    while (!violators.empty()) {
        Var v = take_scheduled(violators, schedule);
        if (++iterations > n) throw std::logic_error("expanding-set peeling exceeded n iterations");
        in_set[v] = 0;
        for (std::uint32_t ci : occ[v]) {
            if (outside_vars[ci]++ != 0) continue;  // clause was already outside F[Z]
            if (!sup[ci]) continue;
            Var u = *sup[ci];
            if (u == v || !in_set[u]) continue;
            --support_in[u];
            if (below_threshold(support_in[u], params.keep_factor, params.t)) violators.insert(u);
        }
    }

    std::vector<Var> z;
    for (Var v = 0; v < n; ++v)
        if (in_set[v]) z.push_back(v);
    return z;
}

std::vector<Var> build_core(const Formula& f, std::span<const Var> z, const Assignment& psi,
                            const CoreParams& params, RemovalSchedule schedule) {
    params.validate();
    if (psi.size() != f.num_vars()) throw std::invalid_argument("build_core: psi size mismatch");
    const std::uint32_t n = f.num_vars();
    auto occ = occurrence_lists(f);
    auto sup = clause_supporters(f, psi);

    std::vector<std::uint8_t> in_core = var_flags(n, z);
    std::vector<std::uint32_t> outside_vars(f.num_clauses(), 0);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
        for (Lit l : f.clause(ci)) outside_vars[ci] += in_core[l.var()] ? 0 : 1;

    std::vector<std::uint64_t> out_count(n, 0), support_in(n, 0);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
        if (outside_vars[ci] == 0) {
            if (sup[ci] && in_core[*sup[ci]]) ++support_in[*sup[ci]];
        } else {
            for (Lit l : f.clause(ci))
                if (in_core[l.var()]) ++out_count[l.var()];
        }
    }

    auto violating = [&](Var v) {
        return above_threshold(out_count[v], params.core_out_factor, params.t) ||
               below_threshold(support_in[v], params.core_support_factor, params.t);
    };

    std::set<Var> violators;
    for (Var v = 0; v < n; ++v)
        if (in_core[v] && violating(v)) violators.insert(v);

    std::size_t iterations = 0;
    while (!violators.empty()) {
        Var v = take_scheduled(violators, schedule);
        if (++iterations > n) throw std::logic_error("core peeling exceeded n iterations");
        in_core[v] = 0;
        for (std::uint32_t ci : occ[v]) {
            if (outside_vars[ci]++ != 0) continue;  // already outside F[H]
            // clause just left F[H]: members lose inside support, gain an outside appearance
            for (Lit l : f.clause(ci)) {
                Var u = l.var();
                if (u == v || !in_core[u]) continue;
                ++out_count[u];
                if (sup[ci] && *sup[ci] == u) --support_in[u];
                if (violating(u)) violators.insert(u);
            }
        }
    }

    std::vector<Var> h;
    for (Var v = 0; v < n; ++v)
        if (in_core[v]) h.push_back(v);

    // re-verify both conditions by direct recount
    auto flags = var_flags(n, h);
    std::vector<std::uint64_t> check_out(n, 0), check_in(n, 0);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
        bool inside = true;
        for (Lit l : f.clause(ci)) inside = inside && flags[l.var()] != 0;
        if (inside) {
            if (sup[ci] && flags[*sup[ci]]) ++check_in[*sup[ci]];
        } else {
            for (Lit l : f.clause(ci))
                if (flags[l.var()]) ++check_out[l.var()];
        }
    }
    for (Var v : h)
        if (above_threshold(check_out[v], params.core_out_factor, params.t) ||
            below_threshold(check_in[v], params.core_support_factor, params.t))
            throw std::logic_error("core output failed re-verification");
    return h;
}

SatelliteClosure satellite_closure(const Formula& f, std::span<const Var> h, const Assignment& phi) {
    if (phi.size() != f.num_vars()) throw std::invalid_argument("satellite_closure: phi size mismatch");
    const std::uint32_t n = f.num_vars();
    SatelliteClosure out;
    out.levels.assign(n, kNoLevel);

    // eligible (clause, member) pairs: all co-literals false under phi.
    // trigger[z] lists pair ids that wait on z; pending[pair] counts unleveled co-variables.
    struct Pair {
        std::uint32_t clause;
        Var member;
        std::uint32_t pending;
    };
    std::vector<Pair> pairs;
    std::vector<std::vector<std::uint32_t>> trigger(n);
    for (std::uint32_t ci = 0; ci < f.num_clauses(); ++ci) {
        const Clause& c = f.clause(ci);
        for (Lit own : c) {
            bool others_false = true;
            for (Lit other : c) {
                if (other.var() == own.var()) continue;
                if (phi.satisfies(other)) {
                    others_false = false;
                    break;
                }
            }
            if (!others_false) continue;
            auto id = static_cast<std::uint32_t>(pairs.size());
            pairs.push_back({ci, own.var(), static_cast<std::uint32_t>(c.width() - 1)});
            for (Lit other : c)
                if (other.var() != own.var()) trigger[other.var()].push_back(id);
        }
    }

    std::vector<Var> queue;
    for (Var v : h) {
        if (v >= n) throw std::out_of_range("satellite_closure: seed variable out of range");
        if (out.levels[v] == 0) continue;
        out.levels[v] = 0;
        queue.push_back(v);
    }
    std::sort(queue.begin(), queue.end());

    // BFS over levels: a pair fires once all its co-variables are leveled; the
    // member's level is one past the last (maximal) co-variable level.
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Var z = queue[head];
        for (std::uint32_t id : trigger[z]) {
            Pair& pr = pairs[id];
            if (--pr.pending != 0) continue;
            if (out.levels[pr.member] != kNoLevel) continue;
            out.levels[pr.member] = out.levels[z] + 1;
            queue.push_back(pr.member);
        }
    }

    for (Var v = 0; v < n; ++v)
        if (out.levels[v] != kNoLevel && out.levels[v] >= 1) out.satellites.push_back(v);
    return out;
}

CoreReport analyze_structure(const Formula& f, const Assignment& psi, const CoreParams& params) {
    if (!satisfies(f, psi)) throw std::logic_error("analyze_structure: psi does not satisfy formula");
    CoreReport report;
    report.psi = psi;
    report.params = params;
    report.t = params.t;
    report.t_effective = params.effective_threshold();
    report.expanding_set = build_expanding_set(f, psi, params);
    report.core = build_core(f, report.expanding_set, psi, params);
    auto closure = satellite_closure(f, report.core, psi);
    report.satellites = std::move(closure.satellites);

    std::vector<Var> assigned = report.core;
    assigned.insert(assigned.end(), report.satellites.begin(), report.satellites.end());
    std::sort(assigned.begin(), assigned.end());
    auto residual = restrict_and_simplify(f, assigned, psi);
    if (!residual) throw std::logic_error("analyze_structure: conflict with a satisfying psi");
    for (const auto& comp : connected_components(residual->n, residual->clauses))
        report.residual_component_sizes.push_back(comp.size());
    return report;
}

CoreReport analyze_structure_best(const Formula& f, const Assignment& psi,
                                  std::span<const std::uint64_t> t_values) {
    if (t_values.empty())
        throw std::invalid_argument("analyze_structure_best: empty t sweep");
    CoreReport best;
    std::size_t best_coverage = 0;
    bool first = true;
    for (std::uint64_t t : t_values) {
        CoreReport report = analyze_structure(f, psi, CoreParams::definition_scaled(t));
        std::size_t coverage = report.core.size() + report.satellites.size();
        if (first || coverage > best_coverage) {
            best = std::move(report);
            best_coverage = coverage;
            first = false;
        }
    }
    return best;
}

}  // namespace satproc
