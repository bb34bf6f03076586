#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "predsynth/continuous.hpp"
#include "predsynth/discrete.hpp"

namespace predsynth {

/// Conditional-CDF tensor of the kernel at the grids' bin representatives:
/// entry (i_1,...,i_K) is Pi(y | x*_{1,i_1},...,x*_{K,i_K}).
PiTensor induced_pi_tensor(const SynthesisKernel& kernel, const std::vector<BinGrid>& grids,
                           double y);

/// Finite-bin approximation of the synthesized CDF at y: the induced
/// tensor evaluated against the panel of binned agent forecasts.
double discrete_cdf_approx(const SynthesisProblem& problem, const std::vector<BinGrid>& grids,
                           double y);

/// Cuts centered on the agent's mean spanning +-8 stddev.
BinGrid default_grid(const AgentDensity& agent, int n);

struct ConvergenceRow {
    int n = 0;
    double approx = 0.0;
    double reference = 0.0;
    double abs_error = 0.0;
};

struct ConvergenceReport {
    double y = 0.0;
    std::string description;
    std::vector<ConvergenceRow> rows; // sorted by increasing n

    double final_error() const { return rows.back().abs_error; }
    void write_csv(std::ostream& out) const;
};

enum class ReferenceKind { Analytic, Quadrature };

/// Evaluates discrete_cdf_approx on grids of increasing resolution against
/// a trusted reference: the closed Gaussian form where available, else
/// 1024-node quadrature.
ConvergenceReport convergence_study(const SynthesisProblem& problem, double y,
                                    const std::vector<int>& n_values,
                                    ReferenceKind reference);

/// Joint cell probabilities over a hypercube grid, row-major with the last
/// coordinate fastest; entries nonnegative and summing to one.
struct CellTable {
    int p = 0;
    int n = 0;
    std::vector<double> probs;

    CellTable(int p, int n, std::vector<double> probs);
};

CellTable product_cell_table(const std::vector<AgentDensity>& marginals,
                             const HypercubeGrid& grid);

/// Multivariate single-agent approximation: sum over all cells of the
/// kernel CDF at the cell representative times the cell probability.
/// Product form for independent coordinates; table form otherwise.
double multivariate_discrete_cdf(const std::vector<AgentDensity>& marginals,
                                 const SynthesisKernel& kernel, const HypercubeGrid& grid,
                                 double y);
double multivariate_discrete_cdf(const CellTable& cells, const SynthesisKernel& kernel,
                                 const HypercubeGrid& grid, double y);

} // namespace predsynth
