#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qinv/acceptance.hpp"
#include "qinv/invariants.hpp"

namespace qinv {

std::string_view tool_version();

// Machine-readable command output. Fields are emitted in a fixed order and
// doubles in shortest round-trip form, so equal inputs give equal bytes.
struct ReportDocument {
    std::string command;
    std::string input_digest;
    std::optional<std::uint64_t> seed;
    std::vector<InvariantEntry> entries;
    std::optional<std::string> verdict;
    // Extra key/value pairs (tolerances, sample counts, comparison values).
    std::vector<std::pair<std::string, std::string>> text_fields;
    std::vector<std::pair<std::string, double>> number_fields;
    std::vector<std::pair<std::string, long long>> integer_fields;
    std::vector<CriterionResult> criteria;

    std::string dump() const;
};

}  // namespace qinv
