#pragma once
// Release gate: one pass/fail line per acceptance criterion.
#include <iosfwd>
#include <string>
#include <vector>

#include "coopcell/config.hpp"

namespace coopcell {

struct CriterionResult {
    std::string name;
    bool pass = false;
    // Documented model-mismatch clause: the failure is the recorded expected
    // outcome of a faithful implementation, not a build defect.
    bool expected_fail = false;
    std::string detail;
};

// Runs every criterion at its stated tolerance on the canonical network
// parameters, seeded from `base.seed`; streams one line per criterion to
// `log` when given.
std::vector<CriterionResult> run_acceptance(const RunConfig& base, int workers,
                                            std::ostream* log = nullptr);

// True when every criterion either passes or fails exactly as documented.
bool acceptance_ok(const std::vector<CriterionResult>& results);

} // namespace coopcell
