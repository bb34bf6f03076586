#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace predsynth {

/// One step of the SplitMix64 generator (Steele, Lea & Flood 2014).
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Stream-splitting rule used everywhere randomness is parallelised:
/// stream `i` of master seed `s` is an mt19937_64 seeded from four
/// SplitMix64 outputs of the state `s XOR (i+1) * 0x9E3779B97F4A7C15`.
/// Results are reproducible for a fixed (seed, stream count).
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

/// Splits [0, total) into `tasks` contiguous chunks and calls
/// fn(task_index, begin, end) for each, on worker threads when tasks > 1.
/// Chunk boundaries depend only on (total, tasks), so any per-chunk
/// seeding via make_stream(seed, task_index) is reproducible.
void run_chunked(std::size_t total, unsigned tasks,
                 const std::function<void(unsigned, std::size_t, std::size_t)>& fn);

} // namespace predsynth
