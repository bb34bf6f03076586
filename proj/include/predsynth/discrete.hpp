#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "predsynth/forecast.hpp"

namespace predsynth {

/// Dense tensor of conditional event probabilities indexed by one vertex
/// assignment per agent: entry (i_1,...,i_K) is the probability of the
/// event given agent k is certain of its i_k-th outcome. Row-major with
/// the last agent's index fastest; indices are 0-based with index n the
/// residual outcome.
class PiTensor {
public:
    PiTensor(int K, int n, std::vector<double> values);

    static PiTensor constant(int K, int n, double value);

    int K() const { return K_; }
    int n() const { return n_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    double at(std::span<const int> index) const { return values_[offset(index)]; }
    std::size_t offset(std::span<const int> index) const;

    /// Averages out agent `k` against the weight vector `weights`
    /// (length n+1), producing the induced K-1 agent tensor.
    PiTensor marginalize(int k, std::span<const double> weights) const;

    static constexpr std::size_t kMaxEntries = 10'000'000;

private:
    int K_;
    int n_;
    std::vector<double> values_;
};

/// The linear opinion pool parameterization: baseline probability p,
/// per-agent coefficient vectors lambda_k (length n+1, residual entry
/// pinned to zero), and the marginal means mu_k. Construction
/// canonicalises lambda by subtracting the residual entry from every
/// coefficient of its agent, which leaves the pool's value unchanged on
/// the simplex.
class LinearPool {
public:
    /// Validated construction: rejects coefficient sets whose vertex values
    /// leave [0,1] (beyond kConstructionSlack) with InvalidCoefficientsError.
    LinearPool(double p, std::vector<std::vector<double>> lambda, MarginalMeans mu);

    /// Constructs without the validity check so diagnostics can hold the
    /// object; evaluators reject pools for which is_valid() is false.
    static LinearPool unchecked(double p, std::vector<std::vector<double>> lambda,
                                MarginalMeans mu);

    double p() const { return p_; }
    int K() const { return K_; }
    int n() const { return n_; }
    const std::vector<std::vector<double>>& lambda() const { return lambda_; }
    const MarginalMeans& mu() const { return mu_; }
    bool is_valid() const { return valid_; }

    /// Smallest and largest value the pool attains over all vertex panels.
    std::pair<double, double> vertex_bounds() const;

    /// Vertex value at assignment (i_1,...,i_K), 0-based.
    double vertex_value(std::span<const int> index) const;

    // Slack for validity at construction; looser than the 1e-12 used by the
    // conversion routines so that pools reconstructed from tensors at the
    // separability tolerance still construct.
    static constexpr double kConstructionSlack = 1e-9;

private:
    LinearPool(double p, std::vector<std::vector<double>> lambda, MarginalMeans mu,
               bool enforce);

    double p_;
    int K_;
    int n_;
    std::vector<std::vector<double>> lambda_;
    MarginalMeans mu_;
    bool valid_ = false;
    double base_ = 0.0; // p - sum_k lambda_k . mu_k, cached for vertex evaluation
};

/// p + sum_k lambda_k . (f_k - mu_k). Rejects invalid pools.
double eval_linear_pool(const LinearPool& pool, const AgentPanel& panel);

/// Tensor of all vertex values of the pool. Rejects any vertex outside
/// [0,1] beyond 1e-12.
PiTensor pool_to_pi(const LinearPool& pool);

/// Inverts pool_to_pi: requires the tensor to be additively separable
/// around the all-residual base vertex within 1e-10, else raises
/// NonSeparableError.
LinearPool pi_to_pool(const PiTensor& pi, const MarginalMeans& mu);

/// sum over all vertex assignments of the tensor entry times the product
/// of the agents' probabilities for that assignment.
double eval_pi_form(const PiTensor& pi, const AgentPanel& panel);

/// Two-stage event draw: one categorical index per agent from its
/// forecast, then a Bernoulli draw with the selected tensor entry.
bool sample_event(const PiTensor& pi, const AgentPanel& panel, std::mt19937_64& rng);

/// Empirical success frequency of sample_event over `draws` draws, chunked
/// across `tasks` reproducible streams.
double sample_event_frequency(const PiTensor& pi, const AgentPanel& panel,
                              std::size_t draws, std::uint64_t seed, unsigned tasks = 1);

struct ValidityReport {
    double min_vertex = 0.0;
    double max_vertex = 0.0;
    bool pass = false;
};

/// Enumerates the pool's vertex values and reports their range and whether
/// all lie in [0,1] (within 1e-12). The pool's value at any panel is a
/// convex combination of vertex values, so containment at the vertices is
/// containment everywhere.
ValidityReport validity_check(const LinearPool& pool);

namespace detail {

/// Row-major odometer over all K-digit indices in [0, base).
template <typename F>
void for_each_index(int K, int base, F&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(K), 0);
    for (;;) {
        fn(std::span<const int>(idx));
        int k = K - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == base) {
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
}

} // namespace detail

} // namespace predsynth
