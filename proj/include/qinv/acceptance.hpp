#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qinv {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double measured = 0.0;   // worst residual / spread seen
    double threshold = 0.0;  // pinned tolerance it was compared against
    std::string detail;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20240611;
    int threads = 0;
    // Cuts sample and state counts by roughly 10x; used for quick smoke runs.
    bool quick = false;
    // Criterion 13 re-runs seeded CLI commands in process; disabled when the
    // battery itself is being run from inside such a command.
    bool determinism = true;
    // Criterion ids to run; empty runs all of them.
    std::vector<int> only;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

// "[PASS] 01 name: measured=... threshold=... detail", fixed formatting.
std::string format_criterion(const CriterionResult& r);

}  // namespace qinv
