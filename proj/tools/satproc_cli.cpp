#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satproc/clause_index.hpp"
#include "satproc/dimacs.hpp"
#include "satproc/harness.hpp"
#include "satproc/json_io.hpp"

namespace {

using namespace satproc;

constexpr int kExitSuccess = 0;
constexpr int kExitSolverFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

void emit(const std::string& out_path, const std::string& contents) {
    if (out_path.empty() || out_path == "-")
        std::cout << contents;
    else
        write_text_file(out_path, contents);
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
    std::vector<std::uint64_t> values;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        values.push_back(std::stoull(token));
    }
    return values;
}

struct GenerateArgs {
    std::uint32_t n = 100;
    std::uint32_t k = 3;
    std::string variant = "perm_m";
    std::optional<std::uint64_t> m;
    std::optional<double> ratio;
    double p = 0.0, p1 = 0.0, p2 = 0.0;
    std::uint64_t seed = 0;
    bool two_step_filter = false;
    std::string out;
    std::string trace_path;
    std::string format = "dimacs";
};

int cmd_generate(const GenerateArgs& args) {
    ProcessConfig cfg;
    cfg.n = args.n;
    cfg.k = args.k;
    cfg.variant = variant_from_string(args.variant);
    if (args.m)
        cfg.m = *args.m;
    else if (args.ratio)
        cfg.m = static_cast<std::uint64_t>(std::llround(*args.ratio * static_cast<double>(args.n)));
    cfg.p = args.p;
    cfg.p1 = args.p1;
    cfg.p2 = args.p2;
    cfg.seed = args.seed;
    cfg.two_step_filter = args.two_step_filter;
    cfg.validate();

    std::string trace_path = args.trace_path;
    if (trace_path.empty() && !args.out.empty() && args.out != "-")
        trace_path = args.out + ".trace.jsonl";

    switch (cfg.variant) {
        case ProcessVariant::PermM:
        case ProcessVariant::CoinP: {
            auto result = generate(cfg);
            emit(args.out, dimacs_write(result.formula));
            if (!trace_path.empty()) write_text_file(trace_path, trace_to_jsonl(result.trace));
            break;
        }
        case ProcessVariant::UnrestrictedP: {
            emit(args.out, dimacs_write(generate_unrestricted(cfg)));
            break;
        }
        case ProcessVariant::TwoStep: {
            auto result = generate_two_step(cfg);
            if (cfg.two_step_filter) {
                emit(args.out, dimacs_write(result.accepted));
                if (!trace_path.empty()) write_text_file(trace_path, trace_to_jsonl(result.trace));
            } else {
                // without the acceptance filter the deliverable is the two rounds
                emit(args.out, dimacs_write(result.round1) + dimacs_write(result.round2));
            }
            break;
        }
        case ProcessVariant::Planted: {
            // the planted assignment is drawn uniformly from a derived stream
            Rng psi_rng(derive_seed(cfg.seed, 0x70736921ULL));
            Assignment psi(cfg.n);
            for (Var v = 0; v < cfg.n; ++v) psi.set(v, (psi_rng.next() & 1) != 0);
            emit(args.out, dimacs_write(generate_planted(cfg.n, cfg.k, cfg.m, psi, cfg.seed)));
            break;
        }
    }
    return kExitSuccess;
}

int cmd_solve(const std::string& in_path, std::uint64_t t, const std::string& t_sweep,
              const std::string& out) {
    Formula f = dimacs_read(read_text_file(in_path));
    SolverConfig cfg;
    cfg.t = t;
    if (!t_sweep.empty()) cfg.t_sweep = parse_u64_list(t_sweep);
    SolveOutcome outcome = solve(f, cfg);
    emit(out, solve_outcome_to_json(outcome).dump(2) + "\n");
    return outcome.success() ? kExitSuccess : kExitSolverFailure;
}

int cmd_analyze(const std::string& in_path, std::uint32_t oracle_limit, std::uint64_t t,
                const std::string& t_sweep, std::uint32_t cluster_link, const std::string& out) {
    Formula f = dimacs_read(read_text_file(in_path));
    Json j;
    j["n"] = f.num_vars();
    j["k"] = f.width();
    j["clauses"] = f.num_clauses();
    auto witness = check_satisfiable(f);
    j["satisfiable"] = witness.has_value();
    if (f.num_vars() <= oracle_limit)
        j["solution_space"] = summary_to_json(summarize_solution_space(f, cluster_link, oracle_limit));
    if (witness) {
        SolverConfig cfg;
        cfg.t = t;
        if (!t_sweep.empty()) cfg.t_sweep = parse_u64_list(t_sweep);
        auto sweep = cfg.resolved_sweep(f.num_vars(), f.num_clauses());
        j["core"] = core_report_to_json(analyze_structure_best(f, *witness, sweep));
    }
    emit(out, j.dump(2) + "\n");
    return witness ? kExitSuccess : kExitSolverFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"restricted random satisfiable k-CNF process toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen_args;
    auto* gen = app.add_subcommand("generate", "generate a formula via a clause process");
    gen->add_option("--n", gen_args.n, "variable count");
    gen->add_option("--k", gen_args.k, "clause width");
    gen->add_option("--variant", gen_args.variant,
                    "perm_m | coin_p | unrestricted_p | two_step | planted");
    std::uint64_t gen_m = 0;
    double gen_ratio = 0.0;
    auto* m_opt = gen->add_option("--m", gen_m, "clause budget");
    auto* ratio_opt = gen->add_option("--ratio", gen_ratio, "clause budget as m/n");
    gen->add_option("--p", gen_args.p, "coin probability");
    gen->add_option("--p1", gen_args.p1, "two-step round-1 probability");
    gen->add_option("--p2", gen_args.p2, "two-step round-2 probability");
    gen->add_flag("--filter", gen_args.two_step_filter, "apply restricted acceptance (two_step)");
    gen->add_option("--seed", gen_args.seed, "RNG seed");
    gen->add_option("--out", gen_args.out, "output DIMACS path ('-' = stdout)");
    gen->add_option("--trace", gen_args.trace_path, "trace JSONL path");
    gen->add_option("--format", gen_args.format, "output format")
        ->check(CLI::IsMember({"dimacs"}));

    std::string solve_in, solve_sweep, solve_out;
    std::uint64_t solve_t = 0;
    auto* solve_cmd = app.add_subcommand("solve", "run the five-step solver on a DIMACS file");
    solve_cmd->add_option("--in", solve_in, "input DIMACS path")->required();
    solve_cmd->add_option("--t", solve_t, "support threshold (0 = sweep)");
    solve_cmd->add_option("--t-sweep", solve_sweep, "comma-separated t values");
    solve_cmd->add_option("--out", solve_out, "output JSON path ('-' = stdout)");

    std::string an_in, an_sweep, an_out;
    std::uint64_t an_t = 0;
    std::uint32_t an_limit = kDefaultOracleVarLimit, an_link = 1;
    auto* an_cmd = app.add_subcommand("analyze", "oracle + core extraction on a DIMACS file");
    an_cmd->add_option("--in", an_in, "input DIMACS path")->required();
    an_cmd->add_option("--oracle-limit", an_limit, "max n for exact enumeration");
    an_cmd->add_option("--t", an_t, "core threshold (0 = sweep)");
    an_cmd->add_option("--t-sweep", an_sweep, "comma-separated t values");
    an_cmd->add_option("--cluster-link", an_link, "cluster Hamming link distance");
    an_cmd->add_option("--out", an_out, "output JSON path ('-' = stdout)");

    EvolveOptions evolve_options;
    std::string evolve_snapshots, evolve_out;
    bool evolve_no_oracle = false;
    auto* ev_cmd = app.add_subcommand("evolve", "snapshot the process as m grows");
    ev_cmd->add_option("--n", evolve_options.n, "variable count");
    ev_cmd->add_option("--k", evolve_options.k, "clause width");
    ev_cmd->add_option("--snapshots", evolve_snapshots, "comma-separated m values")->required();
    ev_cmd->add_option("--seed", evolve_options.seed, "RNG seed");
    ev_cmd->add_flag("--no-oracle", evolve_no_oracle, "skip oracle columns");
    ev_cmd->add_option("--oracle-limit", evolve_options.oracle_limit, "oracle n limit");
    ev_cmd->add_option("--out", evolve_out, "output CSV path ('-' = stdout)");

    TwoStepTestOptions ts_options;
    std::string ts_out;
    double ts_p2 = -1.0;
    auto* ts_cmd = app.add_subcommand("two-step-test", "two-step distribution identity test");
    ts_cmd->add_option("--n", ts_options.n, "variable count");
    ts_cmd->add_option("--k", ts_options.k, "clause width");
    ts_cmd->add_option("--p", ts_options.p, "single-round probability");
    ts_cmd->add_option("--p1", ts_options.p1, "round-1 probability");
    ts_cmd->add_option("--p2", ts_p2, "round-2 probability (default: matched)");
    ts_cmd->add_option("--samples", ts_options.samples, "samples per process");
    ts_cmd->add_option("--seed", ts_options.seed, "RNG seed");
    ts_cmd->add_option("--out", ts_out, "output JSON path ('-' = stdout)");

    std::string exp_spec_path, exp_out_prefix;
    bool exp_timings = false;
    auto* exp_cmd = app.add_subcommand("experiment", "run a grid experiment from a JSON spec");
    exp_cmd->add_option("--spec", exp_spec_path, "experiment spec JSON path")->required();
    exp_cmd->add_option("--out-prefix", exp_out_prefix, "output prefix for CSV/JSON files")
        ->required();
    exp_cmd->add_flag("--timings", exp_timings, "include timing columns");

    std::string bench_ns = "500,1000,2000", bench_out;
    double bench_ratio = 60.0;
    std::uint32_t bench_k = 3, bench_trials = 3;
    std::uint64_t bench_seed = 0;
    auto* bench_cmd = app.add_subcommand("bench", "generation+solve timing across n");
    bench_cmd->add_option("--n-list", bench_ns, "comma-separated n values");
    bench_cmd->add_option("--ratio", bench_ratio, "clause budget as m/n");
    bench_cmd->add_option("--k", bench_k, "clause width");
    bench_cmd->add_option("--trials", bench_trials, "trials per n");
    bench_cmd->add_option("--seed", bench_seed, "master seed");
    bench_cmd->add_option("--out", bench_out, "output CSV path ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitConfigError;
    }

    try {
        if (gen->parsed()) {
            if (*m_opt) gen_args.m = gen_m;
            if (*ratio_opt) gen_args.ratio = gen_ratio;
            return cmd_generate(gen_args);
        }
        if (solve_cmd->parsed()) return cmd_solve(solve_in, solve_t, solve_sweep, solve_out);
        if (an_cmd->parsed())
            return cmd_analyze(an_in, an_limit, an_t, an_sweep, an_link, an_out);
        if (ev_cmd->parsed()) {
            evolve_options.oracle = !evolve_no_oracle;
            for (std::uint64_t m : parse_u64_list(evolve_snapshots))
                evolve_options.snapshot_m.push_back(m);
            auto snapshots = run_evolve(evolve_options);
            emit(evolve_out, evolve_csv(snapshots, evolve_options.oracle));
            return kExitSuccess;
        }
        if (ts_cmd->parsed()) {
            if (ts_p2 >= 0.0) ts_options.p2 = ts_p2;
            auto report = run_two_step_test(ts_options);
            Json j;
            j["p2_used"] = report.p2_used;
            j["composite_p"] = report.composite_p;
            j["count_statistic"] = report.count_test.statistic;
            j["count_df"] = report.count_test.df;
            j["count_p_value"] = report.count_test.p_value;
            j["hash_statistic"] = report.hash_test.statistic;
            j["hash_df"] = report.hash_test.df;
            j["hash_p_value"] = report.hash_test.p_value;
            emit(ts_out, j.dump(2) + "\n");
            return kExitSuccess;
        }
        if (exp_cmd->parsed()) {
            auto spec = ExperimentSpec::from_json_text(read_text_file(exp_spec_path));
            auto report = run_experiment(spec);
            write_text_file(exp_out_prefix + "_rows.csv",
                            experiment_rows_csv(report, exp_timings));
            write_text_file(exp_out_prefix + "_aggregates.csv", experiment_aggregates_csv(report));
            return kExitSuccess;
        }
        if (bench_cmd->parsed()) {
            std::vector<std::uint32_t> ns;
            for (std::uint64_t v : parse_u64_list(bench_ns)) ns.push_back(static_cast<std::uint32_t>(v));
            auto points = run_bench(ns, bench_ratio, bench_k, bench_trials, bench_seed);
            emit(bench_out, bench_csv(points));
            return kExitSuccess;
        }
    } catch (const DimacsError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoError;
    }
    return kExitConfigError;
}
