#include "predsynth/bridge.hpp"

#include <cmath>
#include <ostream>

#include "predsynth/errors.hpp"
#include "predsynth/numeric.hpp"

namespace predsynth {

PiTensor induced_pi_tensor(const SynthesisKernel& kernel, const std::vector<BinGrid>& grids,
                           double y) {
    if (grids.empty()) throw ShapeError("induced_pi_tensor: need at least one grid");
    const int n = grids.front().n();
    for (const auto& g : grids) {
        if (g.n() != n) {
            throw ShapeError("induced_pi_tensor: all grids must share the same cut count");
        }
    }
    const int K = static_cast<int>(grids.size());

    std::vector<std::vector<double>> reps(grids.size());
    for (std::size_t k = 0; k < grids.size(); ++k) {
        reps[k].resize(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            reps[k][static_cast<std::size_t>(i)] = grids[k].representative(i);
        }
    }

    std::vector<double> values;
    std::vector<double> x(grids.size());
    detail::for_each_index(K, n + 1, [&](std::span<const int> idx) {
        for (std::size_t k = 0; k < grids.size(); ++k) {
            x[k] = reps[k][static_cast<std::size_t>(idx[k])];
        }
        values.push_back(kernel.conditional_cdf(y, x));
    });
    return PiTensor(K, n, std::move(values));
}

double discrete_cdf_approx(const SynthesisProblem& problem, const std::vector<BinGrid>& grids,
                           double y) {
    if (grids.size() != static_cast<std::size_t>(problem.K())) {
        throw ShapeError("discrete_cdf_approx: one grid per agent required");
    }
    std::vector<SimplexForecast> binned;
    binned.reserve(grids.size());
    for (std::size_t k = 0; k < grids.size(); ++k) {
        binned.push_back(bin_probabilities(problem.agent(static_cast<int>(k)), grids[k]));
    }
    const PiTensor tensor = induced_pi_tensor(problem.kernel(), grids, y);
    return eval_pi_form(tensor, AgentPanel(std::move(binned)));
}

BinGrid default_grid(const AgentDensity& agent, int n) {
    return BinGrid::centered(agent.mean(), 8.0 * agent.stddev(), n);
}

void ConvergenceReport::write_csv(std::ostream& out) const {
    out << "n,approx,reference,abs_error\n";
    for (const auto& row : rows) {
        out << row.n << ',' << format_g17(row.approx) << ',' << format_g17(row.reference)
            << ',' << format_g17(row.abs_error) << '\n';
    }
}

namespace {

double reference_cdf(const SynthesisProblem& problem, double y, ReferenceKind kind) {
    if (kind == ReferenceKind::Analytic) {
        if (problem.kernel().kind() == SynthesisKernel::Kind::DiracPassthrough) {
            return problem.agent(problem.kernel().passthrough_agent()).cdf(y);
        }
        const GaussianMoments moments = analytic_reference(problem);
        return normal_cdf(y, moments.mean, std::sqrt(moments.variance));
    }
    return synthesize_cdf(problem, y, QuadratureMethod{1024});
}

} // namespace

ConvergenceReport convergence_study(const SynthesisProblem& problem, double y,
                                    const std::vector<int>& n_values,
                                    ReferenceKind reference) {
    if (n_values.empty()) throw ShapeError("convergence_study: need at least one grid size");
    for (std::size_t i = 1; i < n_values.size(); ++i) {
        if (n_values[i] <= n_values[i - 1]) {
            throw ShapeError("convergence_study: grid sizes must be strictly increasing");
        }
    }

    ConvergenceReport report;
    report.y = y;
    report.description =
        "discrete CDF approximation vs " +
        std::string(reference == ReferenceKind::Analytic ? "analytic" : "quadrature") +
        " reference";
    const double ref = reference_cdf(problem, y, reference);
    for (int n : n_values) {
        std::vector<BinGrid> grids;
        grids.reserve(static_cast<std::size_t>(problem.K()));
        for (int k = 0; k < problem.K(); ++k) {
            grids.push_back(default_grid(problem.agent(k), n));
        }
        ConvergenceRow row;
        row.n = n;
        row.approx = discrete_cdf_approx(problem, grids, y);
        row.reference = ref;
        row.abs_error = std::abs(row.approx - ref);
        report.rows.push_back(row);
    }
    return report;
}

CellTable::CellTable(int p_in, int n_in, std::vector<double> probs_in)
    : p(p_in), n(n_in), probs(std::move(probs_in)) {
    if (p < 1) throw ShapeError("CellTable: dimension must be positive");
    if (n < 1) throw ShapeError("CellTable: need at least one cut point");
    std::size_t expected = 1;
    for (int d = 0; d < p; ++d) {
        expected *= static_cast<std::size_t>(n + 1);
        if (expected > PiTensor::kMaxEntries) {
            throw CapabilityError("CellTable: cell count exceeds the dense-storage limit");
        }
    }
    if (probs.size() != expected) {
        throw ShapeError("CellTable: expected " + std::to_string(expected) + " cells");
    }
    for (double& v : probs) {
        if (!(v >= -1e-12)) throw ShapeError("CellTable: negative cell probability");
        v = std::max(v, 0.0);
    }
    const double total = stable_sum(probs);
    if (std::abs(total - 1.0) > 1e-9) {
        throw ShapeError("CellTable: cell probabilities sum to " + format_g17(total));
    }
}

CellTable product_cell_table(const std::vector<AgentDensity>& marginals,
                             const HypercubeGrid& grid) {
    if (marginals.size() != static_cast<std::size_t>(grid.p())) {
        throw ShapeError("product_cell_table: one marginal per coordinate required");
    }
    std::vector<SimplexForecast> per_dim;
    per_dim.reserve(marginals.size());
    for (const auto& m : marginals) per_dim.push_back(bin_probabilities(m, grid.axis()));

    std::vector<double> cells;
    cells.reserve(grid.cell_count());
    detail::for_each_index(grid.p(), grid.axis().n() + 1, [&](std::span<const int> idx) {
        double w = 1.0;
        for (std::size_t d = 0; d < per_dim.size(); ++d) {
            w *= per_dim[d][static_cast<std::size_t>(idx[d])];
        }
        cells.push_back(w);
    });
    return CellTable(grid.p(), grid.axis().n(), std::move(cells));
}

namespace {

double cell_sum(const SynthesisKernel& kernel, const HypercubeGrid& grid, double y,
                const std::function<double(std::size_t, std::span<const int>)>& cell_prob) {
    if (grid.cell_count() > PiTensor::kMaxEntries) {
        throw CapabilityError("multivariate_discrete_cdf: cell count exceeds the limit");
    }
    const int n = grid.axis().n();
    std::vector<double> reps(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        reps[static_cast<std::size_t>(i)] = grid.axis().representative(i);
    }

    long double acc = 0.0L;
    std::vector<double> x(static_cast<std::size_t>(grid.p()));
    std::size_t off = 0;
    detail::for_each_index(grid.p(), n + 1, [&](std::span<const int> idx) {
        const double w = cell_prob(off, idx);
        if (w != 0.0) {
            for (std::size_t d = 0; d < x.size(); ++d) {
                x[d] = reps[static_cast<std::size_t>(idx[d])];
            }
            acc += static_cast<long double>(w) * kernel.conditional_cdf(y, x);
        }
        ++off;
    });
    return static_cast<double>(acc);
}

} // namespace

double multivariate_discrete_cdf(const std::vector<AgentDensity>& marginals,
                                 const SynthesisKernel& kernel, const HypercubeGrid& grid,
                                 double y) {
    if (marginals.size() != static_cast<std::size_t>(grid.p())) {
        throw ShapeError("multivariate_discrete_cdf: one marginal per coordinate required");
    }
    std::vector<SimplexForecast> per_dim;
    per_dim.reserve(marginals.size());
    for (const auto& m : marginals) per_dim.push_back(bin_probabilities(m, grid.axis()));

    return cell_sum(kernel, grid, y, [&](std::size_t, std::span<const int> idx) {
        double w = 1.0;
        for (std::size_t d = 0; d < per_dim.size(); ++d) {
            w *= per_dim[d][static_cast<std::size_t>(idx[d])];
        }
        return w;
    });
}

double multivariate_discrete_cdf(const CellTable& cells, const SynthesisKernel& kernel,
                                 const HypercubeGrid& grid, double y) {
    if (cells.p != grid.p() || cells.n != grid.axis().n()) {
        throw ShapeError("multivariate_discrete_cdf: cell table does not match the grid");
    }
    return cell_sum(kernel, grid, y,
                    [&](std::size_t off, std::span<const int>) { return cells.probs[off]; });
}

} // namespace predsynth
