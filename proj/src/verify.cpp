#include "mantel/verify.hpp"

namespace mantel {

std::vector<CriterionResult> run_suite(const std::string&, int, std::ostream*) {
    return {};
}

}  // namespace mantel
