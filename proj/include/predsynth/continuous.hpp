#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "predsynth/density.hpp"
#include "predsynth/kernel.hpp"

namespace predsynth {

/// A continuous synthesis task: K agent densities combined through a
/// synthesis kernel.
class SynthesisProblem {
public:
    SynthesisProblem(std::vector<AgentDensity> agents, SynthesisKernel kernel);

    int K() const { return static_cast<int>(agents_.size()); }
    const std::vector<AgentDensity>& agents() const { return agents_; }
    const AgentDensity& agent(int k) const { return agents_[static_cast<std::size_t>(k)]; }
    const SynthesisKernel& kernel() const { return kernel_; }

private:
    std::vector<AgentDensity> agents_;
    SynthesisKernel kernel_;
};

/// Tensor-product deterministic integration over the agents; capped at
/// three agents, beyond which Monte Carlo is the supported method.
struct QuadratureMethod {
    int nodes_per_agent = 128;
};

/// Averages the kernel over draws from the agents.
struct MonteCarloMethod {
    std::size_t draws = 100'000;
    std::uint64_t seed = 0;
    unsigned tasks = 1;
};

using SynthesisMethod = std::variant<QuadratureMethod, MonteCarloMethod>;

/// Two-stage draws from the synthesized predictive: each agent's quantity
/// independently, then the kernel conditional on them.
std::vector<double> synthesize_samples(const SynthesisProblem& problem, std::size_t count,
                                       std::uint64_t seed, unsigned tasks = 1);

/// Synthesized predictive density on the query grid.
std::vector<double> synthesize_density(const SynthesisProblem& problem,
                                       std::span<const double> y_grid,
                                       const SynthesisMethod& method);

/// Synthesized predictive CDF.
double synthesize_cdf(const SynthesisProblem& problem, double y,
                      const SynthesisMethod& method);
std::vector<double> synthesize_cdf_grid(const SynthesisProblem& problem,
                                        std::span<const double> y_grid,
                                        const SynthesisMethod& method);

struct GaussianMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Closed-form moments for all-Gaussian agents under a linear-Gaussian
/// kernel: mean = a0 + sum a_k m_k, variance = sigma^2 + sum a_k^2 s_k^2.
GaussianMoments analytic_reference(const SynthesisProblem& problem);

} // namespace predsynth
