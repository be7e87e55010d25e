#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdisk/corpus.hpp"
#include "hdisk/functionals.hpp"

namespace hdisk {

/// Numeric knobs shared by every functional. CLI flags and corpus fact
/// params land here through apply_params; unknown keys are rejected.
struct RunParams {
    double p = 2.0;
    int n = 1;
    double mu = 0.5;
    double r = 0.0;
    cplx a{0.0, 0.0};
    cplx z{0.0, 0.0};
    cplx lambda{1.0, 0.0};
    int levels = 14;
    WeightedIntegralSpec quad;
    SupSearchConfig zsearch;
    SupSearchConfig asearch = default_a_search();
    CarlesonOptions carleson;
};

void apply_params(RunParams& rp, const std::map<std::string, double>& kv);

/// One evaluation, serialized deterministically (nlohmann sorts object keys;
/// doubles round-trip via the shortest representation). Wall time never
/// enters the report body.
struct Report {
    std::string functional;
    std::string entry;
    nlohmann::json inputs = nlohmann::json::object();
    double value = 0.0;
    double est_error = 0.0;
    std::string verdict = "none";
    bool boundary_limited = false;
    bool decaying = false;
    bool converged = false;
    nlohmann::json trace = nlohmann::json::object();

    nlohmann::json to_json() const;
    int exit_code() const;  // 2 on divergent-suspect, 0 otherwise
};

const std::vector<std::string>& functional_ids();

/// Dispatch by functional id; throws NotApplicable when the entry lacks the
/// required data (e.g. an analytic functional on an envelope pseudo-entry),
/// ArgError for unknown ids.
Report run_functional(const std::string& id, const CorpusEntry& entry, const RunParams& rp);

struct FactOutcome {
    bool pass = false;
    double observed = 0.0;
    std::string detail;
};

/// Replays one stored expectation through run_functional.
FactOutcome check_fact(const CorpusEntry& entry, const ExpectedFact& fact);

} // namespace hdisk
