#pragma once

// Acceptance suite: every release-gating property with its tolerance pinned
// in code. Consumed by the acceptance test binary and the `validate` CLI
// subcommand; exit status 0 iff every criterion passes.

#include <string>
#include <vector>

namespace paritysim::validate {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance(int workers);

bool all_passed(const std::vector<CriterionResult>& results);

// One "[PASS]/[FAIL] criterion N: name (detail) [t s]" line per criterion.
void print_results(std::ostream& os, const std::vector<CriterionResult>& results);

} // namespace paritysim::validate
