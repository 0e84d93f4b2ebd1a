#pragma once

#include <string>

#include "specflow/perturbation.hpp"

namespace specflow {

struct VerificationCheck {
    std::string name;
    bool pass = false;
    bool skipped = false;
    double measured = 0.0;
    double bound = 0.0;
    std::string note;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    bool all_pass = true;
    bool oracle_skipped = false;
};

/// Runs the whole invariant battery against one system: polynomial
/// identities, oracle agreement, critical-point residuals, trajectory and
/// level-set residuals, coverage, and the symmetry checks that apply.
VerificationReport run_verification(const RankOneSystem& sys,
                                    unsigned seed = 0x5f3759u);

}  // namespace specflow
