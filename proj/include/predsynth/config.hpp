#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "predsynth/bridge.hpp"
#include "predsynth/continuous.hpp"
#include "predsynth/discrete.hpp"

namespace predsynth {

/// Execution knobs shared by the commands; all have defaults.
struct RunOptions {
    std::uint64_t seed = 0;
    std::size_t draws = 0;
    unsigned threads = 1;
    std::string method = "quadrature"; // or "monte-carlo"
    int nodes = 128;
    bool has_y_grid = false;
    double y_grid_min = 0.0;
    double y_grid_max = 0.0;
    int y_grid_points = 0;
    std::vector<int> bins;             // bridge problems: grid sizes to sweep
    std::string reference = "analytic"; // or "quadrature"
    double threshold = 1e-3;
};

struct QuerySpec {
    std::vector<double> y;
    std::vector<double> quantiles;
};

/// A problem description read from a JSON config file. Parses to exactly
/// one of three shapes: a continuous synthesis problem (agents + kernel),
/// a discrete pool problem ("discrete" block), or a bridge problem
/// (agents + kernel + run.bins).
class ProblemConfig {
public:
    enum class Kind { Continuous, Discrete, Bridge };

    static ProblemConfig load(const std::string& path);
    static ProblemConfig parse(const std::string& text, const std::string& origin,
                               const std::string& base_dir = ".");

    Kind kind() const { return kind_; }
    const QuerySpec& query() const { return query_; }
    const RunOptions& run() const { return run_; }
    RunOptions& run() { return run_; }

    /// Continuous and bridge shapes.
    const SynthesisProblem& problem() const;

    /// Discrete shape.
    const LinearPool& pool() const;
    const AgentPanel& panel() const;

    /// Canonical JSON for --emit-config; reparses to an equivalent problem.
    std::string emit() const;

private:
    ProblemConfig() = default;

    Kind kind_ = Kind::Continuous;
    QuerySpec query_;
    RunOptions run_;
    std::optional<SynthesisProblem> problem_;
    std::optional<LinearPool> pool_;
    std::optional<AgentPanel> panel_;
    std::string canonical_;
};

} // namespace predsynth
