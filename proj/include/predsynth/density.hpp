#pragma once

#include <random>
#include <utility>
#include <vector>

#include "predsynth/forecast.hpp"
#include "predsynth/numeric.hpp"

namespace predsynth {

/// A continuous agent forecast on the real line: Gaussian, Gaussian
/// mixture, or the empirical distribution of a sample. Empirical agents
/// are handled through their ECDF; they have no pointwise density.
class AgentDensity {
public:
    struct Component {
        double weight;
        double mean;
        double stddev;
    };

    enum class Kind { Gaussian, GaussianMixture, Empirical };

    static AgentDensity gaussian(double mean, double stddev);
    static AgentDensity gaussian_mixture(std::vector<Component> components);
    static AgentDensity empirical(std::vector<double> samples);

    Kind kind() const { return kind_; }
    bool has_pdf() const { return kind_ != Kind::Empirical; }

    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double u) const;
    double sample(std::mt19937_64& rng) const;

    double mean() const { return mean_; }
    double stddev() const { return stddev_; }

    /// Interval outside which the agent's mass is negligible for numerical
    /// integration: mean +- 10 stddev per Gaussian component, or
    /// [min - 3 IQR, max + 3 IQR] for samples.
    std::pair<double, double> truncation_box() const;

    /// Node/weight pairs approximating integration against this density.
    /// Continuous kinds use Gauss-Legendre on the truncation box weighted by
    /// the pdf; empirical agents use their atoms (equal weights), stratified
    /// down through the quantile function above kMaxEmpiricalNodes atoms.
    QuadratureRule integration_rule(int nodes) const;

    const std::vector<Component>& components() const { return components_; }
    const std::vector<double>& samples() const { return samples_; }

    static constexpr std::size_t kMaxEmpiricalNodes = 4096;

private:
    AgentDensity() = default;

    Kind kind_ = Kind::Gaussian;
    std::vector<Component> components_; // Gaussian kinds; single entry when Gaussian
    std::vector<double> samples_;       // empirical kind, sorted
    double mean_ = 0.0;
    double stddev_ = 1.0;
};

/// Probability mass the agent assigns to each bin of the grid: entry i is
/// CDF(q_i) - CDF(q_{i-1}) with the infinite tails implicit.
SimplexForecast bin_probabilities(const AgentDensity& agent, const BinGrid& grid);

} // namespace predsynth
