#include "satproc/json_io.hpp"

#include <sstream>

namespace satproc {

const char* to_string(Decision d) {
    switch (d) {
        case Decision::Accepted:
            return "accepted";
        case Decision::Rejected:
            return "rejected";
        case Decision::NotDrawn:
            return "not_drawn";
    }
    return "unknown";
}

namespace {

Json clause_to_json(const Clause& c) {
    Json lits = Json::array();
    for (Lit l : c) lits.push_back(l.to_dimacs());
    return lits;
}

Json assignment_to_json(const Assignment& a) {
    Json values = Json::array();
    for (std::size_t v = 0; v < a.size(); ++v)
        values.push_back(a.value(static_cast<Var>(v)) ? 1 : 0);
    return values;
}

Decision decision_from_string(const std::string& s) {
    if (s == "accepted") return Decision::Accepted;
    if (s == "rejected") return Decision::Rejected;
    if (s == "not_drawn") return Decision::NotDrawn;
    throw std::invalid_argument("unknown trace decision: " + s);
}

}  // namespace

std::string trace_to_jsonl(const GenerationTrace& trace) {
    std::ostringstream out;
    Json meta;
    meta["type"] = "meta";
    meta["seed"] = trace.rng_seed;
    meta["accepted"] = trace.accepted;
    meta["rejected"] = trace.rejected;
    meta["scanned"] = trace.scanned;
    if (trace.composite_p != 0.0) meta["composite_p"] = trace.composite_p;
    meta["witness"] = assignment_to_json(trace.witness);
    out << meta.dump() << '\n';
    for (const TraceEvent& e : trace.events) {
        Json line;
        line["clause"] = clause_to_json(e.clause);
        line["decision"] = to_string(e.decision);
        out << line.dump() << '\n';
    }
    return out.str();
}

GenerationTrace trace_from_jsonl(const std::string& text) {
    GenerationTrace trace;
    std::istringstream in(text);
    std::string line;
    bool meta_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json j = Json::parse(line);
        if (!meta_seen) {
            if (j.value("type", "") != "meta")
                throw std::invalid_argument("trace: first line must be the meta record");
            trace.rng_seed = j.at("seed").get<std::uint64_t>();
            trace.accepted = j.at("accepted").get<std::uint64_t>();
            trace.rejected = j.at("rejected").get<std::uint64_t>();
            trace.scanned = j.at("scanned").get<std::uint64_t>();
            trace.composite_p = j.value("composite_p", 0.0);
            std::vector<std::uint8_t> values;
            for (const auto& bit : j.at("witness")) values.push_back(bit.get<int>() ? 1 : 0);
            trace.witness = Assignment(std::move(values));
            meta_seen = true;
            continue;
        }
        std::vector<Lit> lits;
        for (const auto& d : j.at("clause")) {
            int v = d.get<int>();
            lits.emplace_back(static_cast<Var>(std::abs(v) - 1), v < 0);
        }
        trace.events.push_back({Clause(std::move(lits)),
                                decision_from_string(j.at("decision").get<std::string>())});
    }
    if (!meta_seen) throw std::invalid_argument("trace: missing meta record");
    return trace;
}

Json solve_outcome_to_json(const SolveOutcome& outcome) {
    Json j;
    j["result"] = outcome.success() ? "sat" : "failure";
    if (outcome.success())
        j["assignment"] = assignment_to_json(*outcome.result);
    else
        j["reason"] = to_string(outcome.failure);
    j["t_used"] = outcome.t_used;
    j["attempted_t"] = outcome.attempted_t;
    Json stages;
    stages["flips_per_round"] = outcome.stages.flips_per_round;
    stages["unassigned_count"] = outcome.stages.unassigned_count;
    stages["propagation_rounds"] = outcome.stages.propagation_rounds;
    stages["component_sizes"] = outcome.stages.component_sizes;
    if (outcome.success()) stages["majority_disagreement"] = outcome.stages.majority_disagreement;
    j["stages"] = stages;
    return j;
}

Json summary_to_json(const SolutionSpaceSummary& summary) {
    Json j;
    j["beta"] = summary.beta;
    Json frozen = Json::array();
    for (const auto& [v, value] : summary.frozen) frozen.push_back(Json::array({v, value ? 1 : 0}));
    j["frozen"] = frozen;
    j["radius"] = summary.concentration_radius;
    j["entropy"] = summary.entropy;
    Json clusters = Json::array();
    for (const auto& members : summary.clusters) clusters.push_back(members.size());
    j["clusters"] = clusters;
    return j;
}

Json core_report_to_json(const CoreReport& report) {
    Json j;
    j["expanding_set"] = report.expanding_set;
    j["core"] = report.core;
    j["satellites"] = report.satellites;
    j["t"] = report.t;
    j["t_effective"] = report.t_effective;
    j["residual_component_sizes"] = report.residual_component_sizes;
    std::map<std::size_t, std::size_t> histogram;
    for (std::size_t s : report.residual_component_sizes) ++histogram[s];
    Json hist = Json::object();
    for (const auto& [size, count] : histogram) hist[std::to_string(size)] = count;
    j["residual_component_histogram"] = hist;
    return j;
}

Json proportionality_to_json(const ProportionalityReport& report) {
    Json j;
    j["rho"] = report.rho;
    j["size_cap"] = report.size_cap;
    j["exhaustive"] = report.exhaustive;
    if (report.violating_set) {
        j["violating_set"] = *report.violating_set;
        j["violating_clause_count"] = report.violating_clause_count;
    } else {
        j["violating_set"] = nullptr;
    }
    return j;
}

}  // namespace satproc
