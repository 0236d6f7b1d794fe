// Acceptance gate: runs every top-level criterion and prints one pass/fail
// line each. Exit status 0 only if all criteria pass.

#include "magcrit/acceptance.hpp"

#include <cstdio>

int main()
{
    const auto results = magcrit::run_acceptance([](const magcrit::CriterionResult& r) {
        std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
    });
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
                results.size());
    return failed == 0 ? 0 : 1;
}
