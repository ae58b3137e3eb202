#pragma once

#include <string>

#include "json.hpp"
#include "satproc/corebuilder.hpp"
#include "satproc/generator.hpp"
#include "satproc/oracle.hpp"
#include "satproc/solver.hpp"

namespace satproc {

using Json = nlohmann::ordered_json;

/// Line-oriented trace format: a meta line (seed, counts, witness), then one
/// event per line with the clause's signed DIMACS literals and the decision.
std::string trace_to_jsonl(const GenerationTrace& trace);
GenerationTrace trace_from_jsonl(const std::string& text);

const char* to_string(Decision d);

Json solve_outcome_to_json(const SolveOutcome& outcome);
Json summary_to_json(const SolutionSpaceSummary& summary);
Json core_report_to_json(const CoreReport& report);
Json proportionality_to_json(const ProportionalityReport& report);

}  // namespace satproc
