#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mantel {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the verification battery. "paper" runs every criterion at full scale;
// "quick" restricts to r in {2,3} with lighter enumerations. Progress lines
// go to *progress when non-null.
std::vector<CriterionResult> run_suite(const std::string& name, int threads,
                                       std::ostream* progress = nullptr);

}  // namespace mantel
