#include "predsynth/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "predsynth/errors.hpp"

namespace predsynth {

AgentDensity AgentDensity::gaussian(double mean, double stddev) {
    return gaussian_mixture({Component{1.0, mean, stddev}});
}

AgentDensity AgentDensity::gaussian_mixture(std::vector<Component> components) {
    if (components.empty()) {
        throw ShapeError("AgentDensity: mixture needs at least one component");
    }
    double wsum = 0.0;
    for (const auto& c : components) {
        if (!(c.weight > 0.0)) throw ShapeError("AgentDensity: component weights must be positive");
        if (!(c.stddev > 0.0)) throw ShapeError("AgentDensity: component stddev must be positive");
        wsum += c.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-9) {
        throw ShapeError("AgentDensity: mixture weights must sum to 1");
    }

    AgentDensity d;
    d.kind_ = components.size() == 1 ? Kind::Gaussian : Kind::GaussianMixture;
    d.components_ = std::move(components);
    double m = 0.0;
    for (const auto& c : d.components_) m += c.weight * c.mean;
    double v = 0.0;
    for (const auto& c : d.components_) {
        v += c.weight * (c.stddev * c.stddev + (c.mean - m) * (c.mean - m));
    }
    d.mean_ = m;
    d.stddev_ = std::sqrt(v);
    return d;
}

AgentDensity AgentDensity::empirical(std::vector<double> samples) {
    if (samples.empty()) {
        throw ShapeError("AgentDensity: empirical distribution needs samples");
    }
    std::sort(samples.begin(), samples.end());

    AgentDensity d;
    d.kind_ = Kind::Empirical;
    d.samples_ = std::move(samples);
    const auto count = static_cast<double>(d.samples_.size());
    double m = 0.0;
    for (double x : d.samples_) m += x;
    m /= count;
    double v = 0.0;
    for (double x : d.samples_) v += (x - m) * (x - m);
    d.mean_ = m;
    d.stddev_ = d.samples_.size() > 1 ? std::sqrt(v / (count - 1.0)) : 0.0;
    return d;
}

double AgentDensity::pdf(double x) const {
    if (kind_ == Kind::Empirical) {
        throw CapabilityError("AgentDensity: empirical agents have no pointwise density");
    }
    double acc = 0.0;
    for (const auto& c : components_) acc += c.weight * normal_pdf(x, c.mean, c.stddev);
    return acc;
}

double AgentDensity::cdf(double x) const {
    if (kind_ == Kind::Empirical) {
        const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
        return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
    }
    double acc = 0.0;
    for (const auto& c : components_) acc += c.weight * normal_cdf(x, c.mean, c.stddev);
    return acc;
}

double AgentDensity::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw ShapeError("AgentDensity: quantile level must lie in [0,1]");
    }
    if (kind_ == Kind::Empirical) {
        if (u <= 0.0) return samples_.front();
        const auto count = static_cast<double>(samples_.size());
        const auto rank = static_cast<std::size_t>(std::min(
            count - 1.0, std::max(0.0, std::ceil(u * count) - 1.0)));
        return samples_[rank];
    }
    if (kind_ == Kind::Gaussian) {
        const auto& c = components_.front();
        return normal_quantile(std::clamp(u, 1e-300, 1.0 - 1e-16), c.mean, c.stddev);
    }
    // Mixture: bisection on the CDF over the truncation box.
    auto [lo, hi] = truncation_box();
    const double uu = std::clamp(u, 1e-300, 1.0 - 1e-16);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < uu) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-13 * (1.0 + std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

double AgentDensity::sample(std::mt19937_64& rng) const {
    if (kind_ == Kind::Empirical) {
        std::uniform_int_distribution<std::size_t> pick(0, samples_.size() - 1);
        return samples_[pick(rng)];
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::size_t chosen = components_.size() - 1;
    if (components_.size() > 1) {
        const double u = unif(rng);
        double acc = 0.0;
        for (std::size_t i = 0; i < components_.size(); ++i) {
            acc += components_[i].weight;
            if (u < acc) {
                chosen = i;
                break;
            }
        }
    }
    std::normal_distribution<double> normal(components_[chosen].mean, components_[chosen].stddev);
    return normal(rng);
}

std::pair<double, double> AgentDensity::truncation_box() const {
    if (kind_ == Kind::Empirical) {
        const double lo = samples_.front();
        const double hi = samples_.back();
        const double q1 = quantile(0.25);
        const double q3 = quantile(0.75);
        const double iqr = std::max(q3 - q1, 1e-12);
        return {lo - 3.0 * iqr, hi + 3.0 * iqr};
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& c : components_) {
        lo = std::min(lo, c.mean - 10.0 * c.stddev);
        hi = std::max(hi, c.mean + 10.0 * c.stddev);
    }
    return {lo, hi};
}

QuadratureRule AgentDensity::integration_rule(int nodes) const {
    if (kind_ != Kind::Empirical) {
        auto [lo, hi] = truncation_box();
        QuadratureRule rule = gauss_legendre(nodes, lo, hi);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            rule.weights[i] *= pdf(rule.nodes[i]);
        }
        return rule;
    }
    QuadratureRule rule;
    if (samples_.size() <= kMaxEmpiricalNodes) {
        rule.nodes = samples_;
        rule.weights.assign(samples_.size(), 1.0 / static_cast<double>(samples_.size()));
        return rule;
    }
    // Stratify through the quantile function: midpoint rule on [0,1].
    const std::size_t m = kMaxEmpiricalNodes;
    rule.nodes.resize(m);
    rule.weights.assign(m, 1.0 / static_cast<double>(m));
    for (std::size_t j = 0; j < m; ++j) {
        rule.nodes[j] = quantile((static_cast<double>(j) + 0.5) / static_cast<double>(m));
    }
    return rule;
}

SimplexForecast bin_probabilities(const AgentDensity& agent, const BinGrid& grid) {
    const auto& cuts = grid.cuts();
    std::vector<double> weights(cuts.size() + 1);
    double prev = 0.0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double c = agent.cdf(cuts[i]);
        weights[i] = std::max(0.0, c - prev);
        prev = c;
    }
    weights.back() = std::max(0.0, 1.0 - prev);
    return SimplexForecast(std::move(weights));
}

} // namespace predsynth
