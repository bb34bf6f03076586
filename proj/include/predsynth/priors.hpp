#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "predsynth/discrete.hpp"
#include "predsynth/forecast.hpp"

namespace predsynth {

/// A prior over agent forecast panels of which only the marginal means are
/// pinned down. Three families: independent Dirichlet per agent, an exact
/// two-atom distribution per agent (finite support, expectations computable
/// by enumeration), and a dependent mixture of two independent Dirichlet
/// components sharing a mixture label across agents.
class PriorFamily {
public:
    enum class Kind { IndependentDirichlet, TwoPointGrid, DependentMixture };

    /// Agent k draws Dirichlet(concentration_k * mu_k); requires strictly
    /// interior means.
    static PriorFamily independent_dirichlet(MarginalMeans mu,
                                             std::vector<double> concentration);

    /// Per agent, an atom at the first vertex with weight mu_{k,1} and a
    /// compensating atom on the opposite face, making the mean exact.
    static PriorFamily two_point_grid(MarginalMeans mu);

    /// Equal mixture of two independent Dirichlet priors whose component
    /// means straddle the target symmetrically; the shared mixture label
    /// makes agents dependent while the marginal means stay exact.
    static PriorFamily dependent_mixture(MarginalMeans mu, double concentration = 2.0);

    Kind kind() const { return kind_; }
    const MarginalMeans& target_means() const { return mu_; }
    int K() const { return mu_.K(); }
    int n() const { return mu_.n(); }
    bool finite_support() const { return kind_ == Kind::TwoPointGrid; }

    struct Atom {
        std::vector<SimplexForecast> panel;
        double weight;
    };

    /// Joint support atoms (finite-support families only): the product of
    /// the per-agent two-point distributions, 2^K atoms.
    std::vector<Atom> atoms() const;

    AgentPanel sample(std::mt19937_64& rng) const;

private:
    PriorFamily(Kind kind, MarginalMeans mu);

    Kind kind_;
    MarginalMeans mu_;
    std::vector<double> concentration_;                    // Dirichlet kinds
    std::vector<std::vector<double>> component_mean_a_;    // dependent mixture
    std::vector<std::vector<double>> component_mean_b_;
};

PriorFamily dirichlet_prior(const MarginalMeans& mu, const std::vector<double>& concentration);
PriorFamily two_point_prior(const MarginalMeans& mu);

struct ConsistencyReport {
    bool exact = false;        // enumeration vs Monte Carlo
    double prior_probability = 0.0;
    double expectation = 0.0;  // E[pool value] under the family
    double deviation = 0.0;    // |expectation - prior_probability|
    double standard_error = 0.0;
    std::size_t draws = 0;
    bool pass = false;
};

/// Verifies that averaging the pool over the family returns the baseline
/// probability. Finite-support families are enumerated and held to 1e-12;
/// sampled families are held to 5 standard errors. The family's means must
/// match the pool's.
ConsistencyReport check_consistency(const LinearPool& pool, const PriorFamily& family,
                                    std::size_t draws, std::uint64_t seed);

struct InvarianceReport {
    int dropped_agent = 0;
    double max_lambda_deviation = 0.0; // tensor-route lambdas vs the originals
    double baseline_deviation = 0.0;   // tensor-route baseline vs pool p
    bool pass = false;
};

/// Drops one agent two ways and compares: analytically (substituting the
/// mean for the dropped forecast leaves the survivors' coefficients
/// untouched) and through the vertex tensor (averaging the dropped axis
/// against its mean, then inverting back to a pool). The surviving
/// coefficients must agree within 1e-10.
InvarianceReport check_coefficient_invariance(const LinearPool& pool, int dropped_agent);

struct EquivalenceReport {
    int K = 0;
    int n = 0;
    std::size_t trials = 0;
    double max_abs_deviation = 0.0;
    bool pass = false;
};

/// Randomized witness that the pool form and the vertex-tensor form agree:
/// random valid pools and panels, both evaluations, max deviation < 1e-12.
EquivalenceReport brute_force_equivalence(int K, int n, std::size_t trials,
                                          std::uint64_t seed);

/// Strictly interior random means, a random panel on the simplex, and a
/// random pool whose coefficients are scaled into the validity region.
MarginalMeans random_means(int K, int n, std::mt19937_64& rng);
AgentPanel random_panel(int K, int n, std::mt19937_64& rng);
LinearPool random_valid_pool(int K, int n, std::mt19937_64& rng);

/// One draw from Dirichlet(alpha) via normalised Gamma variates.
std::vector<double> sample_dirichlet(std::span<const double> alpha, std::mt19937_64& rng);

} // namespace predsynth
