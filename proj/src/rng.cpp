#include "predsynth/rng.hpp"

#include <thread>
#include <vector>

namespace predsynth {

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL);
    const std::uint64_t w0 = splitmix64_next(state);
    const std::uint64_t w1 = splitmix64_next(state);
    const std::uint64_t w2 = splitmix64_next(state);
    const std::uint64_t w3 = splitmix64_next(state);
    std::seed_seq seq{static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
                      static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
                      static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32),
                      static_cast<std::uint32_t>(w3), static_cast<std::uint32_t>(w3 >> 32)};
    return std::mt19937_64(seq);
}

void run_chunked(std::size_t total, unsigned tasks,
                 const std::function<void(unsigned, std::size_t, std::size_t)>& fn) {
    if (tasks == 0) tasks = 1;
    if (static_cast<std::size_t>(tasks) > total && total > 0) {
        tasks = static_cast<unsigned>(total);
    }
    const std::size_t chunk = total / tasks;
    const std::size_t extra = total % tasks;

    auto bounds = [&](unsigned t) {
        const std::size_t begin = t * chunk + std::min<std::size_t>(t, extra);
        const std::size_t len = chunk + (t < extra ? 1 : 0);
        return std::pair<std::size_t, std::size_t>{begin, begin + len};
    };

    if (tasks == 1) {
        fn(0, 0, total);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(tasks);
    for (unsigned t = 0; t < tasks; ++t) {
        auto [begin, end] = bounds(t);
        workers.emplace_back([&, t, begin, end] { fn(t, begin, end); });
    }
    for (auto& w : workers) w.join();
}

} // namespace predsynth
