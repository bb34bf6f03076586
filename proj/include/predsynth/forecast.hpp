#pragma once

#include <cstddef>
#include <vector>

namespace predsynth {

/// One agent's probability vector over n forecast events plus the residual
/// event. Stores n+1 weights; entry n is the residual probability. Entries
/// are nonnegative and sum to one within 1e-12 (1e-9 for values read back
/// from text, which are renormalised).
class SimplexForecast {
public:
    /// Validates a full (n+1)-entry weight vector.
    explicit SimplexForecast(std::vector<double> weights, double sum_tolerance = 1e-12);

    /// Accepts text-roundtripped weights at 1e-9 slack and renormalises.
    static SimplexForecast from_text(std::vector<double> weights);

    int n() const { return static_cast<int>(weights_.size()) - 1; }
    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }
    double residual() const { return weights_.back(); }

private:
    std::vector<double> weights_;
};

/// Appends the forced residual entry to n explicit event probabilities.
SimplexForecast make_simplex_forecast(const std::vector<double>& raw);

/// K agent forecasts over a shared event partition.
class AgentPanel {
public:
    explicit AgentPanel(std::vector<SimplexForecast> forecasts);

    int K() const { return static_cast<int>(forecasts_.size()); }
    int n() const { return forecasts_.front().n(); }
    const SimplexForecast& agent(int k) const { return forecasts_[static_cast<std::size_t>(k)]; }
    const std::vector<SimplexForecast>& forecasts() const { return forecasts_; }

private:
    std::vector<SimplexForecast> forecasts_;
};

/// The per-agent marginal means the decision maker pins down; each mean
/// vector lies on the simplex.
class MarginalMeans {
public:
    explicit MarginalMeans(std::vector<std::vector<double>> means, double sum_tolerance = 1e-12);

    int K() const { return static_cast<int>(means_.size()); }
    int n() const { return static_cast<int>(means_.front().size()) - 1; }
    const std::vector<double>& agent(int k) const { return means_[static_cast<std::size_t>(k)]; }
    const std::vector<std::vector<double>>& vectors() const { return means_; }

    /// Means with agent `k` removed (K must be >= 2).
    MarginalMeans without_agent(int k) const;

private:
    std::vector<std::vector<double>> means_;
};

/// Strictly increasing cut points with equal interior spacing; the two
/// unbounded tail bins are implicit. n cut points define n+1 bins.
class BinGrid {
public:
    explicit BinGrid(std::vector<double> cuts);

    /// n equally spaced cuts spanning [center - half_width, center + half_width].
    static BinGrid centered(double center, double half_width, int n);

    int n() const { return static_cast<int>(cuts_.size()); }
    const std::vector<double>& cuts() const { return cuts_; }
    double spacing() const { return spacing_; }

    /// Representative point of bin i (0-based, i in [0, n]): midpoints for
    /// interior bins, the adjacent cut itself for the two unbounded tails.
    double representative(int i) const;

private:
    std::vector<double> cuts_;
    double spacing_; // nominal 1.0 when only a single cut exists
};

/// A shared cut structure replicated across p coordinates.
class HypercubeGrid {
public:
    HypercubeGrid(int p, BinGrid grid);

    int p() const { return p_; }
    const BinGrid& axis() const { return grid_; }
    std::size_t cell_count() const;

private:
    int p_;
    BinGrid grid_;
};

} // namespace predsynth
