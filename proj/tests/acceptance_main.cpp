// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <cstdio>
#include <string>

#include "hdisk/acceptance.hpp"

int main(int argc, char** argv) {
    std::vector<hdisk::CriterionResult> results;
    if (argc > 1) {
        results = hdisk::run_acceptance(argv[1]);
        if (results.empty()) {
            std::printf("filter '%s' matched no criteria\n", argv[1]);
            return 1;
        }
        for (const auto& c : results)
            std::printf("%s  %2d  %-26s  %s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                        c.detail.c_str());
    } else {
        for (int id = 1; id <= 15; ++id) {
            for (const auto& c : hdisk::run_acceptance(std::to_string(id))) {
                std::printf("%s  %2d  %-26s  %s\n", c.pass ? "PASS" : "FAIL", c.id,
                            c.name.c_str(), c.detail.c_str());
                std::fflush(stdout);
                results.push_back(c);
            }
        }
    }
    int failed = 0;
    for (const auto& c : results)
        if (!c.pass) ++failed;
    std::printf("%zu/%zu acceptance criteria passed\n", results.size() - failed,
                results.size());
    return failed == 0 ? 0 : 1;
}
