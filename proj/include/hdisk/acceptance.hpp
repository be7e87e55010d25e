#pragma once

#include <string>
#include <vector>

namespace hdisk {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the acceptance suite. `filter` is a case-sensitive substring matched
/// against "<id>" and the criterion name; empty runs everything. Criteria
/// never throw: failures (including exceptions) land in pass=false with the
/// reason in detail.
std::vector<CriterionResult> run_acceptance(const std::string& filter = "");

} // namespace hdisk
