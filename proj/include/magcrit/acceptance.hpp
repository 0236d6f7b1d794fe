#ifndef MAGCRIT_ACCEPTANCE_HPP
#define MAGCRIT_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

namespace magcrit {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail; // worst observed deviation, or the failure reason
};

/// Run every acceptance criterion end to end (several minutes: the
/// unconstrained table alone is eleven full 2D solves). on_result, if set,
/// fires after each criterion completes, for live progress output.
std::vector<CriterionResult>
run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

inline bool all_passed(const std::vector<CriterionResult>& results)
{
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

} // namespace magcrit

#endif
