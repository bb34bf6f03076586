#include "predsynth/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "predsynth/errors.hpp"
#include "predsynth/numeric.hpp"

namespace predsynth {

namespace {

void check_simplex(const std::vector<double>& w, double tolerance, const char* what) {
    if (w.size() < 2) {
        throw InvalidForecastError(std::string(what) + ": need at least one forecast event");
    }
    for (double v : w) {
        if (!(v >= 0.0) || v > 1.0 + tolerance) {
            throw InvalidForecastError(std::string(what) + ": entry " + format_g17(v) +
                                       " outside [0,1]");
        }
    }
    const double s = stable_sum(w);
    if (std::abs(s - 1.0) > tolerance) {
        throw InvalidForecastError(std::string(what) + ": weights sum to " + format_g17(s) +
                                   ", not 1");
    }
}

} // namespace

SimplexForecast::SimplexForecast(std::vector<double> weights, double sum_tolerance)
    : weights_(std::move(weights)) {
    check_simplex(weights_, sum_tolerance, "SimplexForecast");
}

SimplexForecast SimplexForecast::from_text(std::vector<double> weights) {
    check_simplex(weights, 1e-9, "SimplexForecast");
    const double s = stable_sum(weights);
    if (std::abs(s - 1.0) > 1e-13) {
        for (double& v : weights) v /= s;
    }
    return SimplexForecast(std::move(weights));
}

SimplexForecast make_simplex_forecast(const std::vector<double>& raw) {
    if (raw.empty()) {
        throw InvalidForecastError("make_simplex_forecast: need at least one event probability");
    }
    for (double v : raw) {
        if (!(v >= 0.0)) {
            throw InvalidForecastError("make_simplex_forecast: negative entry " + format_g17(v));
        }
        if (v > 1.0 + 1e-12) {
            throw InvalidForecastError("make_simplex_forecast: entry " + format_g17(v) +
                                       " exceeds 1");
        }
    }
    const double s = stable_sum(raw);
    if (s > 1.0 + 1e-12) {
        throw InvalidForecastError("make_simplex_forecast: probabilities sum to " +
                                   format_g17(s) + " > 1");
    }
    std::vector<double> full = raw;
    full.push_back(std::max(0.0, 1.0 - s));
    return SimplexForecast(std::move(full));
}

AgentPanel::AgentPanel(std::vector<SimplexForecast> forecasts)
    : forecasts_(std::move(forecasts)) {
    if (forecasts_.empty()) {
        throw ShapeError("AgentPanel: need at least one agent");
    }
    const int n = forecasts_.front().n();
    for (const auto& f : forecasts_) {
        if (f.n() != n) {
            throw ShapeError("AgentPanel: all agents must forecast the same number of events");
        }
    }
}

MarginalMeans::MarginalMeans(std::vector<std::vector<double>> means, double sum_tolerance)
    : means_(std::move(means)) {
    if (means_.empty()) {
        throw ShapeError("MarginalMeans: need at least one agent");
    }
    const std::size_t len = means_.front().size();
    for (const auto& m : means_) {
        if (m.size() != len) {
            throw ShapeError("MarginalMeans: all mean vectors must have the same length");
        }
        check_simplex(m, sum_tolerance, "MarginalMeans");
    }
}

MarginalMeans MarginalMeans::without_agent(int k) const {
    if (K() < 2) {
        throw ShapeError("MarginalMeans: cannot drop the only agent");
    }
    std::vector<std::vector<double>> rest;
    rest.reserve(means_.size() - 1);
    for (int j = 0; j < K(); ++j) {
        if (j != k) rest.push_back(means_[static_cast<std::size_t>(j)]);
    }
    return MarginalMeans(std::move(rest));
}

BinGrid::BinGrid(std::vector<double> cuts) : cuts_(std::move(cuts)) {
    if (cuts_.empty()) {
        throw ShapeError("BinGrid: need at least one cut point");
    }
    for (std::size_t i = 1; i < cuts_.size(); ++i) {
        if (!(cuts_[i] > cuts_[i - 1])) {
            throw ShapeError("BinGrid: cut points must be strictly increasing");
        }
    }
    if (cuts_.size() >= 2) {
        spacing_ = cuts_[1] - cuts_[0];
        for (std::size_t i = 2; i < cuts_.size(); ++i) {
            if (std::abs((cuts_[i] - cuts_[i - 1]) - spacing_) > 1e-12) {
                throw ShapeError("BinGrid: interior spacing must be equal");
            }
        }
    } else {
        spacing_ = 1.0; // nominal; a single cut has no interior gap
    }
}

BinGrid BinGrid::centered(double center, double half_width, int n) {
    if (n < 1) throw ShapeError("BinGrid: need at least one cut point");
    if (!(half_width > 0.0)) throw ShapeError("BinGrid: half_width must be positive");
    std::vector<double> cuts(static_cast<std::size_t>(n));
    if (n == 1) {
        cuts[0] = center;
    } else {
        const double step = 2.0 * half_width / (n - 1);
        for (int i = 0; i < n; ++i) {
            cuts[static_cast<std::size_t>(i)] = center - half_width + step * i;
        }
    }
    return BinGrid(std::move(cuts));
}

double BinGrid::representative(int i) const {
    const int bins = n() + 1;
    if (i < 0 || i >= bins) {
        throw ShapeError("BinGrid: bin index out of range");
    }
    if (i == 0) return cuts_.front();
    if (i == n()) return cuts_.back();
    return 0.5 * (cuts_[static_cast<std::size_t>(i - 1)] + cuts_[static_cast<std::size_t>(i)]);
}

HypercubeGrid::HypercubeGrid(int p, BinGrid grid) : p_(p), grid_(std::move(grid)) {
    if (p_ < 1) throw ShapeError("HypercubeGrid: dimension must be positive");
}

std::size_t HypercubeGrid::cell_count() const {
    std::size_t count = 1;
    for (int d = 0; d < p_; ++d) count *= static_cast<std::size_t>(grid_.n() + 1);
    return count;
}

} // namespace predsynth
