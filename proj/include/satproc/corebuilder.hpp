#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "satproc/formula.hpp"

namespace satproc {

/// Threshold parameters for the structural extraction procedures. Defaults are
/// the large-n procedure constants; definition_scaled gives the variant whose
/// output matches the plain definitions (t-expanding, (t/3)-self-contained),
/// which is what desk-scale pipelines use.
struct CoreParams {
    std::uint64_t t = 1;
    Ratio init_factor{502, 1};          // initial prune: support in F w.r.t. psi
    Ratio keep_factor{500, 1};          // iterative prune: support within F[Z]
    Ratio core_out_factor{1, 11};       // removal: appearances outside F[H]
    Ratio core_support_factor{10, 11};  // removal: support within F[H]

    static CoreParams paper_defaults(std::uint64_t t) {
        CoreParams p;
        p.t = t;
        return p;
    }
    static CoreParams definition_scaled(std::uint64_t t) {
        return CoreParams{t, Ratio{1, 1}, Ratio{1, 1}, Ratio{1, 3}, Ratio{1, 1}};
    }

    double effective_threshold() const {
        return keep_factor.value() * static_cast<double>(t);
    }
    void validate() const;  // throws std::invalid_argument
};

/// Removal order for the peeling procedures. The fixpoint is order-independent
/// (the removal conditions are antitone in the surviving set); the schedule
/// exists for reproducible traces and for testing that independence.
enum class RemovalSchedule { LowestIndexFirst, HighestIndexFirst };

/// Two-phase peeling: drop variables supporting fewer than init_factor*t
/// clauses in f w.r.t. psi, then iteratively drop any variable supporting
/// fewer than keep_factor*t clauses within F[Z]. The result is
/// keep_factor*t-expanding w.r.t. psi. May be empty.
std::vector<Var> build_expanding_set(const Formula& f, const Assignment& psi, const CoreParams& params,
                                     RemovalSchedule schedule = RemovalSchedule::LowestIndexFirst);

/// Starting from H = Z, iteratively drop any variable appearing in more than
/// core_out_factor*t clauses outside F[H] or supporting fewer than
/// core_support_factor*t clauses within F[H].
std::vector<Var> build_core(const Formula& f, std::span<const Var> z, const Assignment& psi,
                            const CoreParams& params,
                            RemovalSchedule schedule = RemovalSchedule::LowestIndexFirst);

constexpr std::uint32_t kNoLevel = 0xffffffffu;

struct SatelliteClosure {
    std::vector<Var> satellites;        // all variables at level >= 1, ascending
    std::vector<std::uint32_t> levels;  // per variable: 0 for seeds, kNoLevel if unreached
};

/// Level-by-level closure: x joins level i when some clause pairs a literal of
/// x with k-1 literals that are false under phi over variables of levels < i,
/// at least one of them at level i-1. The seed set h is level 0.
SatelliteClosure satellite_closure(const Formula& f, std::span<const Var> h, const Assignment& phi);

struct CoreReport {
    std::vector<Var> expanding_set;  // Z
    std::vector<Var> core;           // H, subset of Z
    std::vector<Var> satellites;     // S, disjoint from H
    std::uint64_t t = 0;
    double t_effective = 0.0;
    std::vector<std::size_t> residual_component_sizes;  // descending
    Assignment psi;
    CoreParams params;
};

/// Full structural extraction w.r.t. a satisfying assignment psi:
/// expanding set -> core -> satellite closure -> residual components after
/// assigning core+satellites by psi. Throws std::logic_error if psi does not
/// satisfy f.
CoreReport analyze_structure(const Formula& f, const Assignment& psi, const CoreParams& params);

/// analyze_structure with definition-scaled params at each t in the sweep,
/// keeping the report with the largest core+satellite coverage (ties: the
/// smaller t wins).
CoreReport analyze_structure_best(const Formula& f, const Assignment& psi,
                                  std::span<const std::uint64_t> t_values);

}  // namespace satproc
