#include "satproc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "satproc/clause_index.hpp"

namespace satproc {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

ProcessVariant variant_from_string(const std::string& s) {
    if (s == "perm_m") return ProcessVariant::PermM;
    if (s == "coin_p") return ProcessVariant::CoinP;
    if (s == "unrestricted_p") return ProcessVariant::UnrestrictedP;
    if (s == "two_step") return ProcessVariant::TwoStep;
    if (s == "planted") return ProcessVariant::Planted;
    throw std::invalid_argument("unknown process variant: " + s);
}

const char* to_string(ProcessVariant v) {
    switch (v) {
        case ProcessVariant::PermM:
            return "perm_m";
        case ProcessVariant::CoinP:
            return "coin_p";
        case ProcessVariant::UnrestrictedP:
            return "unrestricted_p";
        case ProcessVariant::TwoStep:
            return "two_step";
        case ProcessVariant::Planted:
            return "planted";
    }
    return "unknown";
}

ProcessConfig GridPoint::to_config(std::uint64_t seed) const {
    ProcessConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.variant = variant;
    cfg.seed = seed;
    if (m) {
        cfg.m = *m;
    } else if (ratio) {
        cfg.m = static_cast<std::uint64_t>(std::llround(*ratio * static_cast<double>(n)));
    }
    if (p) cfg.p = *p;
    cfg.validate();
    return cfg;
}

ExperimentSpec ExperimentSpec::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentSpec spec;
    for (const auto& pj : j.at("grid")) {
        GridPoint point;
        point.n = pj.at("n").get<std::uint32_t>();
        point.k = pj.value("k", 3u);
        point.variant = variant_from_string(pj.value("variant", "perm_m"));
        if (pj.contains("ratio")) point.ratio = pj["ratio"].get<double>();
        if (pj.contains("m")) point.m = pj["m"].get<std::uint64_t>();
        if (pj.contains("p")) point.p = pj["p"].get<double>();
        spec.grid.push_back(point);
    }
    spec.trials = j.value("trials", 1u);
    spec.master_seed = j.value("master_seed", std::uint64_t(0));
    if (j.contains("analyses"))
        for (const auto& a : j["analyses"]) spec.analyses.push_back(a.get<std::string>());
    spec.oracle_limit = j.value("oracle_limit", kDefaultOracleVarLimit);
    spec.jobs = j.value("jobs", 1u);
    if (j.contains("t")) spec.solver.t = j["t"].get<std::uint64_t>();
    if (j.contains("t_sweep"))
        for (const auto& t : j["t_sweep"]) spec.solver.t_sweep.push_back(t.get<std::uint64_t>());
    spec.validate();
    return spec;
}

void ExperimentSpec::validate() const {
    if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (grid.empty()) throw std::invalid_argument("experiment: empty grid");
    for (const auto& a : analyses)
        if (a != "solve" && a != "oracle" && a != "core")
            throw std::invalid_argument("experiment: unknown analysis '" + a + "'");
    bool oracle = std::find(analyses.begin(), analyses.end(), "oracle") != analyses.end();
    for (const auto& point : grid) {
        if (oracle && point.n > oracle_limit)
            throw std::invalid_argument("experiment: oracle analysis refused for n above the limit");
        point.to_config(0);  // validates budget/probability ranges
    }
}

namespace {

bool has_analysis(const ExperimentSpec& spec, const char* name) {
    return std::find(spec.analyses.begin(), spec.analyses.end(), name) != spec.analyses.end();
}

ExperimentRow run_one_trial(const ExperimentSpec& spec, std::size_t point_index,
                            std::uint32_t trial) {
    const GridPoint& point = spec.grid[point_index];
    ExperimentRow row;
    row.point = point_index;
    row.trial = trial;
    row.seed = derive_seed(spec.master_seed, point_index, trial);
    try {
        ProcessConfig cfg = point.to_config(row.seed);
        auto start = std::chrono::steady_clock::now();
        GenerationResult gen = generate(cfg);
        row.generate_ms = elapsed_ms(start);
        row.accepted = gen.trace.accepted;
        row.rejected = gen.trace.rejected;
        const Formula& f = gen.formula;

        Assignment core_psi = gen.trace.witness;
        if (has_analysis(spec, "solve")) {
            row.solve_ran = true;
            start = std::chrono::steady_clock::now();
            SolveOutcome outcome = solve(f, spec.solver);
            row.solve_ms = elapsed_ms(start);
            row.solve_success = outcome.success();
            row.t_used = outcome.t_used;
            if (outcome.success()) {
                row.majority_disagreement_fraction =
                    f.num_vars() == 0 ? 0.0
                                      : static_cast<double>(outcome.stages.majority_disagreement) /
                                            static_cast<double>(f.num_vars());
                core_psi = *outcome.result;
            } else {
                row.solve_failure = to_string(outcome.failure);
            }
        }
        if (has_analysis(spec, "oracle")) {
            row.oracle_ran = true;
            auto summary = summarize_solution_space(f, 1, spec.oracle_limit);
            row.beta = summary.beta;
            row.frozen_fraction = f.num_vars() == 0 ? 0.0
                                                    : static_cast<double>(summary.frozen.size()) /
                                                          static_cast<double>(f.num_vars());
            row.radius = summary.concentration_radius;
            row.entropy = summary.entropy;
            row.clusters = summary.clusters.size();
        }
        if (has_analysis(spec, "core")) {
            row.core_ran = true;
            auto sweep = spec.solver.resolved_sweep(f.num_vars(), f.num_clauses());
            CoreReport best = analyze_structure_best(f, core_psi, sweep);
            row.core_size = best.core.size();
            row.satellite_size = best.satellites.size();
            row.coverage_fraction =
                f.num_vars() == 0
                    ? 0.0
                    : static_cast<double>(best.core.size() + best.satellites.size()) /
                          static_cast<double>(f.num_vars());
            row.largest_residual_component = best.residual_component_sizes.empty()
                                                 ? 0
                                                 : best.residual_component_sizes.front();
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentReport report;
    report.spec = spec;
    const std::size_t total = spec.grid.size() * spec.trials;
    report.rows.resize(total);

    auto run_range = [&](std::size_t worker, std::size_t stride) {
        for (std::size_t i = worker; i < total; i += stride) {
            std::size_t point = i / spec.trials;
            auto trial = static_cast<std::uint32_t>(i % spec.trials);
            report.rows[i] = run_one_trial(spec, point, trial);
        }
    };

    std::uint32_t jobs = std::max<std::uint32_t>(1, spec.jobs);
    if (jobs == 1) {
        run_range(0, 1);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(jobs);
        for (std::uint32_t w = 0; w < jobs; ++w) workers.emplace_back(run_range, w, jobs);
        for (auto& t : workers) t.join();
    }

    for (std::size_t p = 0; p < spec.grid.size(); ++p) {
        PointAggregate agg;
        agg.point = p;
        agg.trials = spec.trials;
        double count = static_cast<double>(spec.trials);
        for (std::uint32_t t = 0; t < spec.trials; ++t) {
            const ExperimentRow& row = report.rows[p * spec.trials + t];
            agg.mean_accepted += static_cast<double>(row.accepted) / count;
            agg.mean_rejected += static_cast<double>(row.rejected) / count;
            agg.solve_success_rate += (row.solve_success ? 1.0 : 0.0) / count;
            agg.mean_beta += static_cast<double>(row.beta) / count;
            agg.mean_frozen_fraction += row.frozen_fraction / count;
            agg.mean_entropy += row.entropy / count;
            agg.mean_coverage_fraction += row.coverage_fraction / count;
        }
        report.aggregates.push_back(agg);
    }
    return report;
}

namespace {
constexpr const char* kRowSchema =
    "schema,point,trial,seed,n,k,variant,m_budget,p,accepted,rejected,solve_ran,solve_success,"
    "failure,t_used,maj_disagreement_fraction,oracle_ran,beta,frozen_fraction,radius,entropy,"
    "clusters,core_ran,core_size,satellite_size,coverage_fraction,largest_residual_component,error";
}

std::string experiment_rows_csv(const ExperimentReport& report, bool include_timings) {
    std::ostringstream out;
    out << kRowSchema;
    if (include_timings) out << ",generate_ms,solve_ms";
    out << '\n';
    for (const ExperimentRow& row : report.rows) {
        const GridPoint& point = report.spec.grid[row.point];
        out << "v1," << row.point << ',' << row.trial << ',' << row.seed << ',' << point.n << ','
            << point.k << ',' << to_string(point.variant) << ','
            << (point.m ? *point.m
                        : point.ratio ? static_cast<std::uint64_t>(
                                            std::llround(*point.ratio * static_cast<double>(point.n)))
                                      : 0)
            << ',' << (point.p ? format_double(*point.p) : "") << ',' << row.accepted << ','
            << row.rejected << ',' << row.solve_ran << ',' << row.solve_success << ','
            << row.solve_failure << ',' << row.t_used << ','
            << format_double(row.majority_disagreement_fraction) << ',' << row.oracle_ran << ','
            << row.beta << ',' << format_double(row.frozen_fraction) << ',' << row.radius << ','
            << format_double(row.entropy) << ',' << row.clusters << ',' << row.core_ran << ','
            << row.core_size << ',' << row.satellite_size << ','
            << format_double(row.coverage_fraction) << ',' << row.largest_residual_component << ','
            << row.error;
        if (include_timings)
            out << ',' << format_double(row.generate_ms) << ',' << format_double(row.solve_ms);
        out << '\n';
    }
    return out.str();
}

std::string experiment_aggregates_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "schema,point,n,k,variant,trials,mean_accepted,mean_rejected,solve_success_rate,"
           "mean_beta,mean_frozen_fraction,mean_entropy,mean_coverage_fraction\n";
    for (const PointAggregate& agg : report.aggregates) {
        const GridPoint& point = report.spec.grid[agg.point];
        out << "v1," << agg.point << ',' << point.n << ',' << point.k << ','
            << to_string(point.variant) << ',' << agg.trials << ','
            << format_double(agg.mean_accepted) << ',' << format_double(agg.mean_rejected) << ','
            << format_double(agg.solve_success_rate) << ',' << format_double(agg.mean_beta) << ','
            << format_double(agg.mean_frozen_fraction) << ',' << format_double(agg.mean_entropy)
            << ',' << format_double(agg.mean_coverage_fraction) << '\n';
    }
    return out.str();
}

std::vector<EvolveSnapshot> run_evolve(const EvolveOptions& options) {
    if (options.snapshot_m.empty()) throw std::invalid_argument("evolve: no snapshots requested");
    if (!std::is_sorted(options.snapshot_m.begin(), options.snapshot_m.end()))
        throw std::invalid_argument("evolve: snapshot budgets must be ascending");
    if (options.oracle && options.n > options.oracle_limit)
        throw std::invalid_argument("evolve: oracle columns refused for n above the limit");

    std::uint64_t m_max = options.snapshot_m.back();
    std::uint64_t universe = clause_universe_size(options.n, options.k);
    if (m_max > universe) throw std::invalid_argument("evolve: snapshot beyond the clause universe");

    // one permutation-process stream; prefixes of the index sample realize
    // every intermediate budget exactly
    Rng rng(options.seed);
    auto indices = sample_distinct(rng, universe, m_max);
    RestrictedAcceptor acceptor(options.n, options.k);

    std::vector<EvolveSnapshot> snapshots;
    std::uint64_t scanned = 0, accepted = 0;
    for (std::uint64_t target : options.snapshot_m) {
        while (scanned < target) {
            if (acceptor.offer(clause_from_index(options.n, options.k, indices[scanned]))) ++accepted;
            ++scanned;
        }
        EvolveSnapshot snap;
        snap.m = target;
        snap.accepted = accepted;
        snap.rejected = scanned - accepted;
        if (options.oracle) {
            snap.oracle_ran = true;
            auto summary = summarize_solution_space(acceptor.formula(),
                                                    options.cluster_link_distance,
                                                    options.oracle_limit);
            snap.beta = summary.beta;
            snap.frozen_fraction = options.n == 0 ? 0.0
                                                  : static_cast<double>(summary.frozen.size()) /
                                                        static_cast<double>(options.n);
            snap.radius = summary.concentration_radius;
            snap.clusters = summary.clusters.size();
            snap.entropy = summary.entropy;
        }
        snapshots.push_back(snap);
    }
    return snapshots;
}

std::string evolve_csv(const std::vector<EvolveSnapshot>& snapshots, bool oracle) {
    std::ostringstream out;
    out << "schema,m,accepted,rejected";
    if (oracle) out << ",beta,frozen_fraction,radius,clusters,entropy";
    out << '\n';
    for (const EvolveSnapshot& s : snapshots) {
        out << "v1," << s.m << ',' << s.accepted << ',' << s.rejected;
        if (oracle)
            out << ',' << s.beta << ',' << format_double(s.frozen_fraction) << ',' << s.radius
                << ',' << s.clusters << ',' << format_double(s.entropy);
        out << '\n';
    }
    return out.str();
}

namespace {

std::uint64_t formula_identity_hash(const Formula& f) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (const Clause& c : f.clauses()) {
        std::uint64_t key = clause_to_index(f.num_vars(), f.width(), c);
        std::uint64_t state = h ^ key;
        h = splitmix64_next(state);
    }
    return h;
}

}  // namespace

TwoStepTestReport run_two_step_test(const TwoStepTestOptions& options) {
    if (options.p1 > options.p)
        throw std::invalid_argument("two-step test: p1 must not exceed p");
    TwoStepTestReport report;
    report.p2_used = options.p2 ? *options.p2 : (options.p - options.p1) / (1.0 - options.p1);
    report.composite_p = options.p1 + report.p2_used - options.p1 * report.p2_used;

    std::map<std::int64_t, std::uint64_t> count_one, count_two, hash_one, hash_two;
    for (std::uint64_t i = 0; i < options.samples; ++i) {
        ProcessConfig one;
        one.n = options.n;
        one.k = options.k;
        one.variant = ProcessVariant::CoinP;
        one.p = options.p;
        one.seed = derive_seed(options.seed, 1, i);
        auto single = generate_coin_process(one);
        ++count_one[static_cast<std::int64_t>(single.trace.accepted)];
        ++hash_one[static_cast<std::int64_t>(formula_identity_hash(single.formula) & 31)];

        ProcessConfig two;
        two.n = options.n;
        two.k = options.k;
        two.variant = ProcessVariant::TwoStep;
        two.p1 = options.p1;
        two.p2 = report.p2_used;
        two.two_step_filter = true;
        two.seed = derive_seed(options.seed, 2, i);
        auto twostep = generate_two_step(two);
        ++count_two[static_cast<std::int64_t>(twostep.trace.accepted)];
        ++hash_two[static_cast<std::int64_t>(formula_identity_hash(twostep.accepted) & 31)];
    }
    report.count_test = chi_square_two_sample(count_one, count_two);
    report.hash_test = chi_square_two_sample(hash_one, hash_two);
    return report;
}

std::vector<BenchPoint> run_bench(const std::vector<std::uint32_t>& n_values, double ratio,
                                  std::uint32_t k, std::uint32_t trials, std::uint64_t master_seed) {
    std::vector<BenchPoint> points;
    for (std::size_t idx = 0; idx < n_values.size(); ++idx) {
        std::uint32_t n = n_values[idx];
        for (std::uint32_t trial = 0; trial < trials; ++trial) {
            BenchPoint bp;
            bp.n = n;
            bp.m = static_cast<std::uint64_t>(std::llround(ratio * static_cast<double>(n)));
            ProcessConfig cfg;
            cfg.n = n;
            cfg.k = k;
            cfg.variant = ProcessVariant::PermM;
            cfg.m = bp.m;
            cfg.seed = derive_seed(master_seed, idx, trial);
            auto start = std::chrono::steady_clock::now();
            auto gen = generate_perm_process(cfg);
            bp.generate_ms = elapsed_ms(start);
            bp.accepted = gen.trace.accepted;
            start = std::chrono::steady_clock::now();
            auto outcome = solve(gen.formula, SolverConfig{});
            bp.solve_ms = elapsed_ms(start);
            bp.solve_success = outcome.success();
            points.push_back(bp);
        }
    }
    return points;
}

std::string bench_csv(const std::vector<BenchPoint>& points) {
    std::ostringstream out;
    out << "schema,n,m,accepted,solve_success,generate_ms,solve_ms\n";
    for (const BenchPoint& p : points)
        out << "v1," << p.n << ',' << p.m << ',' << p.accepted << ',' << p.solve_success << ','
            << format_double(p.generate_ms) << ',' << format_double(p.solve_ms) << '\n';
    return out.str();
}

}  // namespace satproc
