#pragma once

#include <random>
#include <span>
#include <vector>

namespace predsynth {

/// The decision maker's conditional law for the target quantity given the
/// agents' quantities: a density alpha(y|x) with CDF Pi(y|x). Three
/// families: y = intercept + w.x + Gaussian noise; exact passthrough of one
/// agent's quantity; and a tabulated conditional CDF on a rectangular
/// (y, x) grid (single agent, continuous and strictly increasing in y).
class SynthesisKernel {
public:
    enum class Kind { LinearGaussian, DiracPassthrough, CustomTable };

    static SynthesisKernel linear_gaussian(double intercept, std::vector<double> weights,
                                           double stddev);
    static SynthesisKernel dirac_passthrough(int agent_index);

    /// cdf_table[i][j] = Pi(y_grid[i] | x_grid[j]); every column must rise
    /// from ~0 to ~1 and be nondecreasing.
    static SynthesisKernel custom_table(std::vector<double> y_grid,
                                        std::vector<double> x_grid,
                                        std::vector<std::vector<double>> cdf_table);

    Kind kind() const { return kind_; }

    /// Number of conditioning agents the kernel expects; 0 means "any"
    /// (passthrough kernels work for any panel containing their agent).
    int arity() const;
    int passthrough_agent() const { return agent_index_; }

    bool can_sample() const { return kind_ != Kind::CustomTable; }
    bool can_evaluate_pdf() const { return kind_ != Kind::DiracPassthrough; }

    double conditional_pdf(double y, std::span<const double> x) const;
    double conditional_cdf(double y, std::span<const double> x) const;
    double sample(std::span<const double> x, std::mt19937_64& rng) const;

    double intercept() const { return intercept_; }
    const std::vector<double>& weights() const { return weights_; }
    double stddev() const { return stddev_; }

private:
    SynthesisKernel() = default;
    void check_arity(std::size_t got) const;

    Kind kind_ = Kind::LinearGaussian;
    double intercept_ = 0.0;
    std::vector<double> weights_;
    double stddev_ = 1.0;
    int agent_index_ = 0;
    std::vector<double> table_y_;
    std::vector<double> table_x_;
    std::vector<std::vector<double>> table_cdf_;
};

} // namespace predsynth
