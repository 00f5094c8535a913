#pragma once

#include <string>
#include <vector>

#include "gamow/types.hpp"

namespace gamow {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // worst observed figure, or the failure reason
};

/// Run the invariant suites of all modules. `full` enlarges the random
/// samples and adds the slower quadrature cross-checks.
std::vector<CheckResult> run_validation(bool full);

}  // namespace gamow
