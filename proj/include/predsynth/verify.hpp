#pragma once

#include <cstdint>

#include "predsynth/report.hpp"

namespace predsynth {

struct VerifyOptions {
    std::size_t trials = 1000;      // randomized equivalence trials per shape
    std::size_t mc_draws = 100'000; // Monte Carlo consistency draws
    std::uint64_t seed = 20250801;
    bool inject_invalid_pool = false; // self-test: force one failing record
};

/// Full verification suite: randomized form equivalence across shapes,
/// the consistency condition under every prior family (including the
/// dependent one), and coefficient invariance under agent removal.
/// Deterministic for a fixed seed.
Report run_verify_suite(const VerifyOptions& options);

} // namespace predsynth
