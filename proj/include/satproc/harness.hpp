#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satproc/corebuilder.hpp"
#include "satproc/generator.hpp"
#include "satproc/oracle.hpp"
#include "satproc/solver.hpp"
#include "satproc/stats.hpp"

namespace satproc {

ProcessVariant variant_from_string(const std::string& s);
const char* to_string(ProcessVariant v);

/// One grid point of an experiment: clause budget given as m, as a ratio m/n,
/// or as a probability p depending on the variant.
struct GridPoint {
    std::uint32_t n = 0;
    std::uint32_t k = 3;
    ProcessVariant variant = ProcessVariant::PermM;
    std::optional<double> ratio;
    std::optional<std::uint64_t> m;
    std::optional<double> p;

    ProcessConfig to_config(std::uint64_t seed) const;
};

struct ExperimentSpec {
    std::vector<GridPoint> grid;
    std::uint32_t trials = 1;
    std::uint64_t master_seed = 0;
    std::vector<std::string> analyses;  // subset of {solve, oracle, core}
    std::uint32_t oracle_limit = kDefaultOracleVarLimit;
    std::uint32_t jobs = 1;
    SolverConfig solver;

    static ExperimentSpec from_json_text(const std::string& text);
    void validate() const;
};

struct ExperimentRow {
    std::size_t point = 0;
    std::uint32_t trial = 0;
    std::uint64_t seed = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;

    bool solve_ran = false;
    bool solve_success = false;
    std::string solve_failure;
    std::uint64_t t_used = 0;
    double majority_disagreement_fraction = 0.0;

    bool oracle_ran = false;
    std::uint64_t beta = 0;
    double frozen_fraction = 0.0;
    std::uint32_t radius = 0;
    double entropy = 0.0;
    std::uint64_t clusters = 0;

    bool core_ran = false;
    std::uint64_t core_size = 0;
    std::uint64_t satellite_size = 0;
    double coverage_fraction = 0.0;
    std::size_t largest_residual_component = 0;

    std::string error;  // row-level failure, run continues

    double generate_ms = 0.0;  // timing columns, excluded from determinism
    double solve_ms = 0.0;
};

struct PointAggregate {
    std::size_t point = 0;
    std::uint32_t trials = 0;
    double mean_accepted = 0.0;
    double mean_rejected = 0.0;
    double solve_success_rate = 0.0;
    double mean_beta = 0.0;
    double mean_frozen_fraction = 0.0;
    double mean_entropy = 0.0;
    double mean_coverage_fraction = 0.0;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<ExperimentRow> rows;
    std::vector<PointAggregate> aggregates;
};

ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Versioned CSV of the per-trial rows. Timing columns appear only when
/// include_timings is set (they are excluded from determinism guarantees).
std::string experiment_rows_csv(const ExperimentReport& report, bool include_timings);
std::string experiment_aggregates_csv(const ExperimentReport& report);

// --- process evolution ---

struct EvolveOptions {
    std::uint32_t n = 16;
    std::uint32_t k = 3;
    std::vector<std::uint64_t> snapshot_m;  // ascending clause budgets
    std::uint64_t seed = 0;
    bool oracle = true;
    std::uint32_t oracle_limit = kDefaultOracleVarLimit;
    std::uint32_t cluster_link_distance = 1;
};

struct EvolveSnapshot {
    std::uint64_t m = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    bool oracle_ran = false;
    std::uint64_t beta = 0;
    double frozen_fraction = 0.0;
    std::uint32_t radius = 0;
    std::uint64_t clusters = 0;
    double entropy = 0.0;
};

/// Runs one permutation-process stream to max(snapshot_m), capturing counts
/// (and oracle columns when enabled) at each snapshot.
std::vector<EvolveSnapshot> run_evolve(const EvolveOptions& options);
std::string evolve_csv(const std::vector<EvolveSnapshot>& snapshots, bool oracle);

// --- two-step distribution identity ---

struct TwoStepTestOptions {
    std::uint32_t n = 4;
    std::uint32_t k = 3;
    double p = 0.3;
    double p1 = 0.1;
    std::optional<double> p2;  // default: (p - p1) / (1 - p1), the matched value
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
};

struct TwoStepTestReport {
    double p2_used = 0.0;
    double composite_p = 0.0;
    ChiSquareResult count_test;  // accepted-clause-count histograms
    ChiSquareResult hash_test;   // hashed formula-identity histograms
};

/// Samples the one-round restricted coin process and the two-step process and
/// compares accepted-formula statistics by two-sample chi-square tests.
TwoStepTestReport run_two_step_test(const TwoStepTestOptions& options);

// --- benchmarking ---

struct BenchPoint {
    std::uint32_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t accepted = 0;
    double generate_ms = 0.0;
    double solve_ms = 0.0;
    bool solve_success = false;
};

std::vector<BenchPoint> run_bench(const std::vector<std::uint32_t>& n_values, double ratio,
                                  std::uint32_t k, std::uint32_t trials, std::uint64_t master_seed);
std::string bench_csv(const std::vector<BenchPoint>& points);

/// Shortest round-trip decimal rendering (deterministic CSV floats).
std::string format_double(double value);

}  // namespace satproc
