#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtp {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

// Runs the full acceptance suite; one result per criterion.
std::vector<CriterionResult> run_acceptance();

// Prints one PASS/FAIL line per criterion; returns true iff all passed.
bool report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace gtp
