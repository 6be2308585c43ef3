#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qinv/algebra.hpp"
#include "qinv/partition.hpp"

namespace qinv {

// {"n": 3, "d": 2, "amplitudes": [[re, im], ...]}, big-endian site order,
// "d" optional (default 2).
AlgebraElement parse_state_json(std::string_view text);
AlgebraElement parse_state(const std::filesystem::path& path);

// Doubles are written in shortest round-trip form, so parse(write(x)) == x.
std::string write_state_json(const AlgebraElement& state);
void write_state(const AlgebraElement& state, const std::filesystem::path& path);

// FNV-1a 64 of the canonical state JSON, as 16 hex digits.
std::string state_digest(const AlgebraElement& state);

enum class StateKind { Random, Bell, Ghz, W, Separable };

StateKind parse_state_kind(std::string_view text);
std::string_view state_kind_name(StateKind kind);

// Normalised complex-Gaussian amplitudes.
AlgebraElement random_state(int n, std::uint64_t seed);

// random / bell (n = 2) / ghz / w / separable (independent random factor on
// each block; fully separable when no partition is given).
AlgebraElement generate_state(StateKind kind, int n, std::uint64_t seed,
                              const std::optional<SetPartition>& partition = std::nullopt);

}  // namespace qinv
