#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcb::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full verification matrix: every criterion at its pinned
/// tolerance. One line per criterion is written to `out` as it completes
/// (pass/fail, worst margin, wall time).
std::vector<CriterionResult> run_all(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace lcb::acceptance
