#ifndef POLYBRAID_ACCEPTANCE_HPP
#define POLYBRAID_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace polybraid::acceptance {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Run the full acceptance suite: every criterion at its stated tolerance.
/// Exceptions inside a criterion mark it failed with the error text.
std::vector<CriterionResult> run_all();

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace polybraid::acceptance

#endif
