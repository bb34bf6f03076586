#include "predsynth/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "predsynth/errors.hpp"
#include "predsynth/rng.hpp"

namespace predsynth {

SynthesisKernel SynthesisKernel::linear_gaussian(double intercept, std::vector<double> weights,
                                                 double stddev) {
    if (weights.empty()) throw ShapeError("SynthesisKernel: need at least one agent weight");
    if (!(stddev > 0.0)) throw ShapeError("SynthesisKernel: stddev must be positive");
    SynthesisKernel kernel;
    kernel.kind_ = Kind::LinearGaussian;
    kernel.intercept_ = intercept;
    kernel.weights_ = std::move(weights);
    kernel.stddev_ = stddev;
    return kernel;
}

SynthesisKernel SynthesisKernel::dirac_passthrough(int agent_index) {
    if (agent_index < 0) throw ShapeError("SynthesisKernel: agent index must be nonnegative");
    SynthesisKernel kernel;
    kernel.kind_ = Kind::DiracPassthrough;
    kernel.agent_index_ = agent_index;
    return kernel;
}

SynthesisKernel SynthesisKernel::custom_table(std::vector<double> y_grid,
                                              std::vector<double> x_grid,
                                              std::vector<std::vector<double>> cdf_table) {
    if (y_grid.size() < 2 || x_grid.size() < 2) {
        throw ShapeError("SynthesisKernel: table needs at least a 2x2 grid");
    }
    for (std::size_t i = 1; i < y_grid.size(); ++i) {
        if (!(y_grid[i] > y_grid[i - 1])) {
            throw ShapeError("SynthesisKernel: table y grid must be strictly increasing");
        }
    }
    for (std::size_t j = 1; j < x_grid.size(); ++j) {
        if (!(x_grid[j] > x_grid[j - 1])) {
            throw ShapeError("SynthesisKernel: table x grid must be strictly increasing");
        }
    }
    if (cdf_table.size() != y_grid.size()) {
        throw ShapeError("SynthesisKernel: table needs one row per y grid point");
    }
    for (const auto& row : cdf_table) {
        if (row.size() != x_grid.size()) {
            throw ShapeError("SynthesisKernel: table rows must match the x grid");
        }
    }
    for (std::size_t j = 0; j < x_grid.size(); ++j) {
        if (cdf_table.front()[j] > 1e-9 || cdf_table.back()[j] < 1.0 - 1e-9) {
            throw ShapeError(
                "SynthesisKernel: table columns must run from 0 to 1 over the y grid");
        }
        for (std::size_t i = 1; i < cdf_table.size(); ++i) {
            if (cdf_table[i][j] < cdf_table[i - 1][j] - 1e-12) {
                throw ShapeError("SynthesisKernel: table columns must be nondecreasing in y");
            }
        }
    }

    SynthesisKernel kernel;
    kernel.kind_ = Kind::CustomTable;
    kernel.table_y_ = std::move(y_grid);
    kernel.table_x_ = std::move(x_grid);
    kernel.table_cdf_ = std::move(cdf_table);
    return kernel;
}

int SynthesisKernel::arity() const {
    switch (kind_) {
        case Kind::LinearGaussian: return static_cast<int>(weights_.size());
        case Kind::DiracPassthrough: return 0; // any panel containing the agent
        case Kind::CustomTable: return 1;
    }
    return 0;
}

void SynthesisKernel::check_arity(std::size_t got) const {
    switch (kind_) {
        case Kind::LinearGaussian:
            if (got != weights_.size()) {
                throw ShapeError("SynthesisKernel: expected " +
                                 std::to_string(weights_.size()) + " agents, got " +
                                 std::to_string(got));
            }
            return;
        case Kind::DiracPassthrough:
            if (static_cast<std::size_t>(agent_index_) >= got) {
                throw ShapeError("SynthesisKernel: passthrough agent index out of range");
            }
            return;
        case Kind::CustomTable:
            if (got != 1) {
                throw ShapeError("SynthesisKernel: tabulated kernels condition on one agent");
            }
            return;
    }
}

namespace {

// Linear interpolation in a sorted grid; clamps outside the range.
double interp_fraction(const std::vector<double>& grid, double v, std::size_t& left) {
    if (v <= grid.front()) {
        left = 0;
        return 0.0;
    }
    if (v >= grid.back()) {
        left = grid.size() - 2;
        return 1.0;
    }
    const auto it = std::upper_bound(grid.begin(), grid.end(), v);
    left = static_cast<std::size_t>(it - grid.begin()) - 1;
    return (v - grid[left]) / (grid[left + 1] - grid[left]);
}

} // namespace

double SynthesisKernel::conditional_cdf(double y, std::span<const double> x) const {
    check_arity(x.size());
    switch (kind_) {
        case Kind::LinearGaussian: {
            double mean = intercept_;
            for (std::size_t k = 0; k < weights_.size(); ++k) mean += weights_[k] * x[k];
            return normal_cdf(y, mean, stddev_);
        }
        case Kind::DiracPassthrough:
            return x[static_cast<std::size_t>(agent_index_)] <= y ? 1.0 : 0.0;
        case Kind::CustomTable: {
            if (y <= table_y_.front()) return 0.0;
            if (y >= table_y_.back()) return 1.0;
            std::size_t yi = 0, xj = 0;
            const double ty = interp_fraction(table_y_, y, yi);
            const double tx = interp_fraction(table_x_, x[0], xj);
            const double lo =
                (1.0 - tx) * table_cdf_[yi][xj] + tx * table_cdf_[yi][xj + 1];
            const double hi =
                (1.0 - tx) * table_cdf_[yi + 1][xj] + tx * table_cdf_[yi + 1][xj + 1];
            return (1.0 - ty) * lo + ty * hi;
        }
    }
    return 0.0;
}

double SynthesisKernel::conditional_pdf(double y, std::span<const double> x) const {
    check_arity(x.size());
    switch (kind_) {
        case Kind::LinearGaussian: {
            double mean = intercept_;
            for (std::size_t k = 0; k < weights_.size(); ++k) mean += weights_[k] * x[k];
            return normal_pdf(y, mean, stddev_);
        }
        case Kind::DiracPassthrough:
            throw CapabilityError(
                "SynthesisKernel: a passthrough kernel has no pointwise density");
        case Kind::CustomTable: {
            if (y <= table_y_.front() || y >= table_y_.back()) return 0.0;
            std::size_t yi = 0, xj = 0;
            (void)interp_fraction(table_y_, y, yi);
            const double tx = interp_fraction(table_x_, x[0], xj);
            const double lo =
                (1.0 - tx) * table_cdf_[yi][xj] + tx * table_cdf_[yi][xj + 1];
            const double hi =
                (1.0 - tx) * table_cdf_[yi + 1][xj] + tx * table_cdf_[yi + 1][xj + 1];
            return (hi - lo) / (table_y_[yi + 1] - table_y_[yi]);
        }
    }
    return 0.0;
}

double SynthesisKernel::sample(std::span<const double> x, std::mt19937_64& rng) const {
    check_arity(x.size());
    switch (kind_) {
        case Kind::LinearGaussian: {
            double mean = intercept_;
            for (std::size_t k = 0; k < weights_.size(); ++k) mean += weights_[k] * x[k];
            std::normal_distribution<double> noise(mean, stddev_);
            return noise(rng);
        }
        case Kind::DiracPassthrough:
            return x[static_cast<std::size_t>(agent_index_)];
        case Kind::CustomTable:
            throw CapabilityError("SynthesisKernel: tabulated kernels carry no inverse to sample");
    }
    return 0.0;
}

SynthesisProblem::SynthesisProblem(std::vector<AgentDensity> agents, SynthesisKernel kernel)
    : agents_(std::move(agents)), kernel_(std::move(kernel)) {
    if (agents_.empty()) throw ShapeError("SynthesisProblem: need at least one agent");
    kernel_.check_arity(agents_.size());
}

std::vector<double> synthesize_samples(const SynthesisProblem& problem, std::size_t count,
                                       std::uint64_t seed, unsigned tasks) {
    if (count == 0) throw ShapeError("synthesize_samples: need at least one draw");
    if (!problem.kernel().can_sample()) {
        throw CapabilityError("synthesize_samples: the kernel cannot be sampled");
    }
    std::vector<double> out(count);
    const auto K = static_cast<std::size_t>(problem.K());
    run_chunked(count, tasks, [&](unsigned task, std::size_t begin, std::size_t end) {
        auto rng = make_stream(seed, task);
        std::vector<double> x(K);
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t k = 0; k < K; ++k) {
                x[k] = problem.agent(static_cast<int>(k)).sample(rng);
            }
            out[i] = problem.kernel().sample(x, rng);
        }
    });
    return out;
}

namespace {

// Flattened tensor-product integration nodes over the agents.
struct NodePanel {
    std::vector<double> coords;  // count x K, row-major
    std::vector<double> weights; // count
    std::size_t count = 0;
    std::size_t K = 0;
};

NodePanel build_node_panel(const SynthesisProblem& problem, int nodes_per_agent) {
    if (problem.K() > 3) {
        throw CapabilityError(
            "quadrature synthesis supports at most three agents; use monte-carlo");
    }
    if (nodes_per_agent < 1) throw ShapeError("quadrature needs at least one node per agent");

    std::vector<QuadratureRule> rules;
    rules.reserve(static_cast<std::size_t>(problem.K()));
    std::size_t total = 1;
    for (int k = 0; k < problem.K(); ++k) {
        rules.push_back(problem.agent(k).integration_rule(nodes_per_agent));
        total *= rules.back().nodes.size();
        if (total > (static_cast<std::size_t>(1) << 24)) {
            throw CapabilityError("quadrature node panel exceeds the supported size");
        }
    }

    NodePanel panel;
    panel.K = static_cast<std::size_t>(problem.K());
    panel.count = total;
    panel.coords.resize(total * panel.K);
    panel.weights.assign(total, 1.0);

    std::vector<std::size_t> idx(panel.K, 0);
    for (std::size_t row = 0; row < total; ++row) {
        double w = 1.0;
        for (std::size_t k = 0; k < panel.K; ++k) {
            panel.coords[row * panel.K + k] = rules[k].nodes[idx[k]];
            w *= rules[k].weights[idx[k]];
        }
        panel.weights[row] = w;
        for (std::size_t k = panel.K; k-- > 0;) {
            if (++idx[k] < rules[k].nodes.size()) break;
            idx[k] = 0;
        }
    }
    return panel;
}

enum class Integrand { Density, Cdf };

std::vector<double> integrate_grid(const SynthesisProblem& problem,
                                   std::span<const double> y_grid,
                                   const SynthesisMethod& method, Integrand integrand) {
    const auto& kernel = problem.kernel();

    // Passthrough synthesis is exact substitution of the selected agent.
    if (kernel.kind() == SynthesisKernel::Kind::DiracPassthrough) {
        const auto& agent = problem.agent(kernel.passthrough_agent());
        std::vector<double> out(y_grid.size());
        for (std::size_t i = 0; i < y_grid.size(); ++i) {
            out[i] = integrand == Integrand::Density ? agent.pdf(y_grid[i])
                                                     : agent.cdf(y_grid[i]);
        }
        return out;
    }

    std::vector<double> out(y_grid.size(), 0.0);
    if (const auto* quad = std::get_if<QuadratureMethod>(&method)) {
        const NodePanel panel = build_node_panel(problem, quad->nodes_per_agent);
        for (std::size_t i = 0; i < y_grid.size(); ++i) {
            const double y = y_grid[i];
            long double acc = 0.0L;
            for (std::size_t row = 0; row < panel.count; ++row) {
                const std::span<const double> x(panel.coords.data() + row * panel.K, panel.K);
                const double v = integrand == Integrand::Density
                                     ? kernel.conditional_pdf(y, x)
                                     : kernel.conditional_cdf(y, x);
                acc += static_cast<long double>(panel.weights[row]) * v;
            }
            out[i] = static_cast<double>(acc);
        }
        return out;
    }

    const auto& mc = std::get<MonteCarloMethod>(method);
    if (mc.draws == 0) throw ShapeError("monte-carlo synthesis needs draws");
    const auto K = static_cast<std::size_t>(problem.K());
    const unsigned tasks = std::max(1u, mc.tasks);
    std::vector<std::vector<double>> partial(tasks,
                                             std::vector<double>(y_grid.size(), 0.0));
    run_chunked(mc.draws, tasks, [&](unsigned task, std::size_t begin, std::size_t end) {
        auto rng = make_stream(mc.seed, task);
        std::vector<double> x(K);
        auto& local = partial[task];
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t k = 0; k < K; ++k) {
                x[k] = problem.agent(static_cast<int>(k)).sample(rng);
            }
            for (std::size_t g = 0; g < y_grid.size(); ++g) {
                local[g] += integrand == Integrand::Density
                                ? kernel.conditional_pdf(y_grid[g], x)
                                : kernel.conditional_cdf(y_grid[g], x);
            }
        }
    });
    for (std::size_t g = 0; g < y_grid.size(); ++g) {
        long double acc = 0.0L;
        for (unsigned t = 0; t < tasks; ++t) acc += partial[t][g];
        out[g] = static_cast<double>(acc / static_cast<long double>(mc.draws));
    }
    return out;
}

} // namespace

std::vector<double> synthesize_density(const SynthesisProblem& problem,
                                       std::span<const double> y_grid,
                                       const SynthesisMethod& method) {
    return integrate_grid(problem, y_grid, method, Integrand::Density);
}

std::vector<double> synthesize_cdf_grid(const SynthesisProblem& problem,
                                        std::span<const double> y_grid,
                                        const SynthesisMethod& method) {
    return integrate_grid(problem, y_grid, method, Integrand::Cdf);
}

double synthesize_cdf(const SynthesisProblem& problem, double y,
                      const SynthesisMethod& method) {
    const double point[1] = {y};
    return integrate_grid(problem, std::span<const double>(point, 1), method,
                          Integrand::Cdf)[0];
}

GaussianMoments analytic_reference(const SynthesisProblem& problem) {
    const auto& kernel = problem.kernel();
    if (kernel.kind() != SynthesisKernel::Kind::LinearGaussian) {
        throw CapabilityError("analytic_reference: requires a linear-gaussian kernel");
    }
    GaussianMoments moments;
    moments.mean = kernel.intercept();
    moments.variance = kernel.stddev() * kernel.stddev();
    for (int k = 0; k < problem.K(); ++k) {
        const auto& agent = problem.agent(k);
        if (agent.kind() != AgentDensity::Kind::Gaussian) {
            throw CapabilityError("analytic_reference: all agents must be Gaussian");
        }
        const double a = kernel.weights()[static_cast<std::size_t>(k)];
        moments.mean += a * agent.mean();
        moments.variance += a * a * agent.stddev() * agent.stddev();
    }
    return moments;
}

} // namespace predsynth
