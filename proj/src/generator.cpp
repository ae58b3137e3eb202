#include "satproc/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "satproc/clause_index.hpp"

namespace satproc {

namespace {

constexpr std::uint64_t kScanModeUniverseCap = std::uint64_t(1) << 20;

bool prob_ok(double p) { return p >= 0.0 && p <= 1.0; }

CoinMode resolve_mode(const ProcessConfig& cfg, std::uint64_t universe) {
    if (cfg.coin_mode != CoinMode::Auto) return cfg.coin_mode;
    return universe <= kScanModeUniverseCap ? CoinMode::Scan : CoinMode::Binomial;
}

// Drawn clause indices for a coin-flip pass over the universe; order matches
// a uniform scan. Scan mode also reports skipped indices via not_drawn.
std::vector<std::uint64_t> coin_draw(Rng& rng, std::uint64_t universe, double p, CoinMode mode,
                                     std::vector<std::uint64_t>* not_drawn) {
    if (mode == CoinMode::Scan) {
        if (universe > kScanModeUniverseCap)
            throw std::invalid_argument("coin scan mode: clause universe too large to materialize");
        std::vector<std::uint64_t> perm(universe);
        for (std::uint64_t i = 0; i < universe; ++i) perm[i] = i;
        shuffle(perm, rng);
        std::vector<std::uint64_t> drawn;
        for (std::uint64_t idx : perm) {
            if (bernoulli(rng, p))
                drawn.push_back(idx);
            else if (not_drawn != nullptr)
                not_drawn->push_back(idx);
        }
        return drawn;
    }
    std::uint64_t count = binomial(rng, universe, p);
    return sample_distinct(rng, universe, count);
}

}  // namespace

void ProcessConfig::validate() const {
    if (k < 1 || k > n) throw std::invalid_argument("process config: need 1 <= k <= n");
    std::uint64_t universe = clause_universe_size(n, k);
    switch (variant) {
        case ProcessVariant::PermM:
            if (m > universe) throw std::invalid_argument("process config: m exceeds clause universe");
            break;
        case ProcessVariant::Planted:
            if (m > satisfied_universe_size(n, k))
                throw std::invalid_argument("process config: m exceeds satisfied clause universe");
            break;
        case ProcessVariant::CoinP:
        case ProcessVariant::UnrestrictedP:
            if (!prob_ok(p)) throw std::invalid_argument("process config: p outside [0,1]");
            break;
        case ProcessVariant::TwoStep:
            if (!prob_ok(p1) || !prob_ok(p2))
                throw std::invalid_argument("process config: p1/p2 outside [0,1]");
            break;
    }
}

// --- RestrictedAcceptor ---

RestrictedAcceptor::RestrictedAcceptor(std::uint32_t n, std::uint32_t k, std::uint64_t track_limit,
                                       std::uint64_t track_budget)
    : formula_(n, k), solver_(n), track_limit_(track_limit), track_budget_(track_budget) {
    cache_.push_back(Assignment(n, false));  // the empty formula is satisfied by anything
}

bool RestrictedAcceptor::any_cached_satisfies(const Clause& c) const {
    for (const Assignment& a : cache_)
        if (evaluate(c, a)) return true;
    return false;
}

void RestrictedAcceptor::prune_cache(const Clause& accepted) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < cache_.size(); ++i)
        if (evaluate(accepted, cache_[i])) {
            if (out != i) cache_[out] = std::move(cache_[i]);
            ++out;
        }
    cache_.resize(out);
}

void RestrictedAcceptor::try_enable_tracking() {
    if (tracking_ || track_limit_ == 0) return;
    auto result = enumerate_clauses(formula_.num_vars(), formula_.clauses(), track_limit_ + 1,
                                    track_budget_);
    if (result.complete && result.solutions.size() <= track_limit_) {
        tracked_ = std::move(result.solutions);
        tracking_ = true;
        cache_.clear();
    }
}

bool RestrictedAcceptor::offer(const Clause& c) {
    if (tracking_) {
        bool any = false;
        for (std::size_t i = 0; i < tracked_.size() && !any; ++i) {
            for (Lit l : c)
                if (tracked_.satisfies(i, l)) {
                    any = true;
                    break;
                }
        }
        if (!any) return false;
        formula_.append(c);
        tracked_.filter([&](std::size_t i) {
            for (Lit l : c)
                if (tracked_.satisfies(i, l)) return true;
            return false;
        });
        return true;
    }

    if (any_cached_satisfies(c)) {
        formula_.append(c);
        prune_cache(c);
        return true;
    }

    // full check: satisfiable(F and C) iff some literal of C can hold with F
    ++solver_searches_;
    if (!cache_.empty()) solver_.set_phase_hints(cache_.front().raw());
    bool sat = false;
    for (Lit l : c) {
        Lit assumption[1] = {l};
        if (solver_.solve(assumption)) {
            sat = true;
            break;
        }
    }
    if (sat) {
        Assignment model = solver_.model_assignment();
        formula_.append(c);
        solver_.add_clause(c.literals());
        prune_cache(c);
        cache_.insert(cache_.begin(), std::move(model));
        if (cache_.size() > 8) cache_.resize(8);
        return true;
    }
    // certified: formula plus c is unsatisfiable. Rejections mean the solution
    // space is thinning; probe (with backoff) whether it fits the tracker.
    ++rejections_;
    if (rejections_ >= next_track_attempt_) {
        try_enable_tracking();
        if (!tracking_) {
            next_track_attempt_ = rejections_ + track_backoff_;
            track_backoff_ = std::min<std::uint64_t>(track_backoff_ * 2, 256);
        }
    }
    return false;
}

Assignment RestrictedAcceptor::witness() const {
    if (tracking_) {
        if (tracked_.empty()) throw std::logic_error("acceptor: tracked solution list empty");
        return tracked_.assignment(0);
    }
    if (cache_.empty()) throw std::logic_error("acceptor: witness cache empty");
    return cache_.front();
}

namespace {

class TraceRecorder {
public:
    explicit TraceRecorder(const ProcessConfig& cfg)
        : acceptor_(cfg.n, cfg.k, cfg.track_limit, cfg.track_budget) {
        trace_.rng_seed = cfg.seed;
    }

    void offer(Clause c) {
        bool ok = acceptor_.offer(c);
        trace_.events.push_back({std::move(c), ok ? Decision::Accepted : Decision::Rejected});
        ++trace_.scanned;
        if (ok)
            ++trace_.accepted;
        else
            ++trace_.rejected;
    }

    void skip(Clause c) {
        trace_.events.push_back({std::move(c), Decision::NotDrawn});
        ++trace_.scanned;
    }

    GenerationResult finish() {
        trace_.witness = acceptor_.witness();
        return GenerationResult{acceptor_.formula(), std::move(trace_)};
    }

private:
    RestrictedAcceptor acceptor_;
    GenerationTrace trace_;
};

GenerationResult run_restricted_scan(const ProcessConfig& cfg,
                                     const std::vector<std::uint64_t>& drawn) {
    TraceRecorder recorder(cfg);
    for (std::uint64_t idx : drawn) recorder.offer(clause_from_index(cfg.n, cfg.k, idx));
    return recorder.finish();
}

}  // namespace

GenerationResult generate_perm_process(const ProcessConfig& cfg) {
    if (cfg.variant != ProcessVariant::PermM)
        throw std::invalid_argument("generate_perm_process: wrong variant");
    cfg.validate();
    Rng rng(cfg.seed);
    std::uint64_t universe = clause_universe_size(cfg.n, cfg.k);
    auto indices = sample_distinct(rng, universe, cfg.m);
    return run_restricted_scan(cfg, indices);
}

GenerationResult generate_coin_process(const ProcessConfig& cfg) {
    if (cfg.variant != ProcessVariant::CoinP)
        throw std::invalid_argument("generate_coin_process: wrong variant");
    cfg.validate();
    Rng rng(cfg.seed);
    std::uint64_t universe = clause_universe_size(cfg.n, cfg.k);
    CoinMode mode = resolve_mode(cfg, universe);
    if (mode == CoinMode::Scan) {
        // full scan keeps skipped clauses in the trace at their scan position
        if (universe > kScanModeUniverseCap)
            throw std::invalid_argument("coin scan mode: clause universe too large to materialize");
        std::vector<std::uint64_t> perm(universe);
        for (std::uint64_t i = 0; i < universe; ++i) perm[i] = i;
        shuffle(perm, rng);
        TraceRecorder recorder(cfg);
        for (std::uint64_t idx : perm) {
            Clause c = clause_from_index(cfg.n, cfg.k, idx);
            if (bernoulli(rng, cfg.p))
                recorder.offer(std::move(c));
            else
                recorder.skip(std::move(c));
        }
        return recorder.finish();
    }
    auto drawn = coin_draw(rng, universe, cfg.p, CoinMode::Binomial, nullptr);
    return run_restricted_scan(cfg, drawn);
}

Formula generate_unrestricted(const ProcessConfig& cfg) {
    if (cfg.variant != ProcessVariant::UnrestrictedP)
        throw std::invalid_argument("generate_unrestricted: wrong variant");
    cfg.validate();
    Rng rng(cfg.seed);
    std::uint64_t universe = clause_universe_size(cfg.n, cfg.k);
    CoinMode mode = resolve_mode(cfg, universe);
    auto drawn = coin_draw(rng, universe, cfg.p, mode, nullptr);
    Formula f(cfg.n, cfg.k);
    for (std::uint64_t idx : drawn) f.append(clause_from_index(cfg.n, cfg.k, idx));
    return f;
}

GenerationResult generate(const ProcessConfig& cfg) {
    switch (cfg.variant) {
        case ProcessVariant::PermM:
            return generate_perm_process(cfg);
        case ProcessVariant::CoinP:
            return generate_coin_process(cfg);
        default:
            throw std::invalid_argument("generate: variant has a dedicated entry point");
    }
}

TwoStepResult generate_two_step(const ProcessConfig& cfg) {
    if (cfg.variant != ProcessVariant::TwoStep)
        throw std::invalid_argument("generate_two_step: wrong variant");
    cfg.validate();
    Rng rng(cfg.seed);
    std::uint64_t universe = clause_universe_size(cfg.n, cfg.k);
    CoinMode mode = resolve_mode(cfg, universe);

    std::vector<std::uint64_t> round1, round2;
    if (mode == CoinMode::Scan) {
        if (universe > kScanModeUniverseCap)
            throw std::invalid_argument("two-step scan mode: clause universe too large");
        std::vector<std::uint64_t> perm(universe);
        for (std::uint64_t i = 0; i < universe; ++i) perm[i] = i;
        shuffle(perm, rng);
        std::vector<std::uint64_t> remaining;
        for (std::uint64_t idx : perm) {
            if (bernoulli(rng, cfg.p1))
                round1.push_back(idx);
            else
                remaining.push_back(idx);
        }
        for (std::uint64_t idx : remaining)
            if (bernoulli(rng, cfg.p2)) round2.push_back(idx);
    } else {
        std::uint64_t x1 = binomial(rng, universe, cfg.p1);
        round1 = sample_distinct(rng, universe, x1);
        std::unordered_set<std::uint64_t> taken(round1.begin(), round1.end());
        std::uint64_t x2 = binomial(rng, universe - x1, cfg.p2);
        // rejection against round 1; x1 is tiny next to the universe
        std::unordered_set<std::uint64_t> second;
        while (second.size() < x2) {
            std::uint64_t idx = uniform_below(rng, universe);
            if (taken.count(idx) || !second.insert(idx).second) continue;
        }
        round2.assign(second.begin(), second.end());
        std::sort(round2.begin(), round2.end());
        shuffle(round2, rng);
    }

    TwoStepResult result;
    result.round1 = Formula(cfg.n, cfg.k);
    for (std::uint64_t idx : round1) result.round1.append(clause_from_index(cfg.n, cfg.k, idx));
    result.round2 = Formula(cfg.n, cfg.k);
    for (std::uint64_t idx : round2) result.round2.append(clause_from_index(cfg.n, cfg.k, idx));

    std::vector<std::uint64_t> concatenated = round1;
    concatenated.insert(concatenated.end(), round2.begin(), round2.end());
    if (cfg.two_step_filter) {
        auto filtered = run_restricted_scan(cfg, concatenated);
        result.accepted = std::move(filtered.formula);
        result.trace = std::move(filtered.trace);
    } else {
        result.accepted = Formula(cfg.n, cfg.k);
        result.trace.rng_seed = cfg.seed;
        result.trace.scanned = concatenated.size();
    }
    result.trace.composite_p = cfg.p1 + cfg.p2 - cfg.p1 * cfg.p2;
    return result;
}

Formula generate_planted(std::uint32_t n, std::uint32_t k, std::uint64_t m, const Assignment& psi,
                         std::uint64_t seed) {
    if (k < 1 || k > n) throw std::invalid_argument("generate_planted: need 1 <= k <= n");
    if (psi.size() != n) throw std::invalid_argument("generate_planted: psi size mismatch");
    std::uint64_t universe = satisfied_universe_size(n, k);
    if (m > universe) throw std::invalid_argument("generate_planted: m exceeds satisfied universe");
    Rng rng(seed);
    auto indices = sample_distinct(rng, universe, m);
    Formula f(n, k);
    for (std::uint64_t idx : indices) f.append(satisfied_clause_from_index(n, k, psi, idx));
    return f;
}

std::optional<Assignment> check_satisfiable(const Formula& f) {
    const std::uint32_t n = f.num_vars();

    // pure-literal elimination on a shrinking clause set
    std::vector<std::uint8_t> fixed(n, 0), fixed_value(n, 0), clause_gone(f.num_clauses(), 0);
    for (;;) {
        std::vector<std::uint8_t> seen_pos(n, 0), seen_neg(n, 0);
        for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
            if (clause_gone[ci]) continue;
            for (Lit l : f.clause(ci)) (l.negated() ? seen_neg : seen_pos)[l.var()] = 1;
        }
        bool changed = false;
        for (Var v = 0; v < n; ++v) {
            if (fixed[v] || seen_pos[v] == seen_neg[v]) continue;  // absent or impure
            fixed[v] = 1;
            fixed_value[v] = seen_pos[v];  // satisfy every clause it appears in
            changed = true;
        }
        if (!changed) break;
        for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
            if (clause_gone[ci]) continue;
            for (Lit l : f.clause(ci))
                if (fixed[l.var()] && (fixed_value[l.var()] != 0) != l.negated()) {
                    clause_gone[ci] = 1;
                    break;
                }
        }
    }

    CdclSolver solver(n);
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
        if (clause_gone[ci]) continue;
        if (!solver.add_clause(f.clause(ci).literals())) return std::nullopt;
    }
    if (!solver.solve()) return std::nullopt;
    Assignment a = solver.model_assignment();
    for (Var v = 0; v < n; ++v)
        if (fixed[v]) a.set(v, fixed_value[v] != 0);
    return a;
}

}  // namespace satproc
