#include "predsynth/priors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "predsynth/errors.hpp"
#include "predsynth/numeric.hpp"
#include "predsynth/rng.hpp"

namespace predsynth {

namespace {

void require_interior(const MarginalMeans& mu, const char* what) {
    for (const auto& m : mu.vectors()) {
        for (double v : m) {
            if (!(v > 0.0)) {
                throw DegenerateMeanError(std::string(what) +
                                          ": target mean lies on the simplex boundary");
            }
        }
    }
}

} // namespace

std::vector<double> sample_dirichlet(std::span<const double> alpha, std::mt19937_64& rng) {
    std::vector<double> draw(alpha.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        std::gamma_distribution<double> gamma(alpha[i], 1.0);
        draw[i] = gamma(rng);
        sum += draw[i];
    }
    if (sum <= 0.0) {
        // all-underflow corner; fall back to the mean direction
        const double u = 1.0 / static_cast<double>(alpha.size());
        std::fill(draw.begin(), draw.end(), u);
        return draw;
    }
    for (double& v : draw) v /= sum;
    return draw;
}

PriorFamily::PriorFamily(Kind kind, MarginalMeans mu) : kind_(kind), mu_(std::move(mu)) {}

PriorFamily PriorFamily::independent_dirichlet(MarginalMeans mu,
                                               std::vector<double> concentration) {
    if (concentration.size() != static_cast<std::size_t>(mu.K())) {
        throw ShapeError("PriorFamily: one concentration per agent required");
    }
    for (double c : concentration) {
        if (!(c > 0.0)) throw ShapeError("PriorFamily: concentrations must be positive");
    }
    require_interior(mu, "independent_dirichlet");
    PriorFamily family(Kind::IndependentDirichlet, std::move(mu));
    family.concentration_ = std::move(concentration);
    return family;
}

PriorFamily PriorFamily::two_point_grid(MarginalMeans mu) {
    require_interior(mu, "two_point_grid");
    return PriorFamily(Kind::TwoPointGrid, std::move(mu));
}

PriorFamily PriorFamily::dependent_mixture(MarginalMeans mu, double concentration) {
    if (!(concentration > 0.0)) {
        throw ShapeError("PriorFamily: concentration must be positive");
    }
    require_interior(mu, "dependent_mixture");

    PriorFamily family(Kind::DependentMixture, std::move(mu));
    family.concentration_.assign(static_cast<std::size_t>(family.K()), concentration);
    const auto& means = family.mu_.vectors();
    const double uniform = 1.0 / static_cast<double>(family.n() + 1);
    for (const auto& m : means) {
        // Component means mu +- gamma (mu - u) stay inside the simplex for
        // gamma below the smallest boundary ratio; halve it for margin.
        double gamma = 1.0;
        for (double v : m) {
            if (v < uniform) gamma = std::min(gamma, v / (uniform - v));
        }
        gamma *= 0.5;
        std::vector<double> a(m.size());
        std::vector<double> b(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            a[i] = (1.0 - gamma) * m[i] + gamma * uniform;
            b[i] = (1.0 + gamma) * m[i] - gamma * uniform;
        }
        family.component_mean_a_.push_back(std::move(a));
        family.component_mean_b_.push_back(std::move(b));
    }
    return family;
}

std::vector<PriorFamily::Atom> PriorFamily::atoms() const {
    if (kind_ != Kind::TwoPointGrid) {
        throw CapabilityError("PriorFamily: only two-point families have finite support");
    }
    const auto width = static_cast<std::size_t>(n() + 1);

    // Per agent: an atom at the first vertex with weight mu_{k,0}, and the
    // compensating atom on the opposite face.
    std::vector<std::array<SimplexForecast, 2>> per_agent;
    std::vector<std::array<double, 2>> per_weight;
    for (int k = 0; k < K(); ++k) {
        const auto& m = mu_.agent(k);
        std::vector<double> vertex(width, 0.0);
        vertex[0] = 1.0;
        std::vector<double> face(width, 0.0);
        const double rest = 1.0 - m[0];
        for (std::size_t i = 1; i < width; ++i) face[i] = m[i] / rest;
        per_agent.push_back({SimplexForecast(vertex), SimplexForecast(face)});
        per_weight.push_back({m[0], rest});
    }

    std::vector<Atom> result;
    result.reserve(static_cast<std::size_t>(1) << K());
    detail::for_each_index(K(), 2, [&](std::span<const int> choice) {
        Atom atom;
        atom.weight = 1.0;
        for (int k = 0; k < K(); ++k) {
            const auto pick = static_cast<std::size_t>(choice[static_cast<std::size_t>(k)]);
            atom.panel.push_back(per_agent[static_cast<std::size_t>(k)][pick]);
            atom.weight *= per_weight[static_cast<std::size_t>(k)][pick];
        }
        result.push_back(std::move(atom));
    });
    return result;
}

AgentPanel PriorFamily::sample(std::mt19937_64& rng) const {
    std::vector<SimplexForecast> panel;
    panel.reserve(static_cast<std::size_t>(K()));
    switch (kind_) {
        case Kind::IndependentDirichlet: {
            for (int k = 0; k < K(); ++k) {
                const auto& m = mu_.agent(k);
                std::vector<double> alpha(m.size());
                for (std::size_t i = 0; i < m.size(); ++i) {
                    alpha[i] = concentration_[static_cast<std::size_t>(k)] * m[i];
                }
                panel.emplace_back(sample_dirichlet(alpha, rng));
            }
            break;
        }
        case Kind::TwoPointGrid: {
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            for (int k = 0; k < K(); ++k) {
                const auto& m = mu_.agent(k);
                const auto width = static_cast<std::size_t>(n() + 1);
                if (unif(rng) < m[0]) {
                    std::vector<double> vertex(width, 0.0);
                    vertex[0] = 1.0;
                    panel.emplace_back(std::move(vertex));
                } else {
                    std::vector<double> face(width, 0.0);
                    for (std::size_t i = 1; i < width; ++i) face[i] = m[i] / (1.0 - m[0]);
                    panel.emplace_back(std::move(face));
                }
            }
            break;
        }
        case Kind::DependentMixture: {
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            const bool first = unif(rng) < 0.5; // shared label couples the agents
            const auto& component = first ? component_mean_a_ : component_mean_b_;
            for (int k = 0; k < K(); ++k) {
                const auto& m = component[static_cast<std::size_t>(k)];
                std::vector<double> alpha(m.size());
                for (std::size_t i = 0; i < m.size(); ++i) {
                    alpha[i] = concentration_[static_cast<std::size_t>(k)] * m[i];
                }
                panel.emplace_back(sample_dirichlet(alpha, rng));
            }
            break;
        }
    }
    return AgentPanel(std::move(panel));
}

PriorFamily dirichlet_prior(const MarginalMeans& mu, const std::vector<double>& concentration) {
    return PriorFamily::independent_dirichlet(mu, concentration);
}

PriorFamily two_point_prior(const MarginalMeans& mu) {
    return PriorFamily::two_point_grid(mu);
}

ConsistencyReport check_consistency(const LinearPool& pool, const PriorFamily& family,
                                    std::size_t draws, std::uint64_t seed) {
    if (family.K() != pool.K() || family.n() != pool.n()) {
        throw ShapeError("check_consistency: family and pool dimensions disagree");
    }
    for (int k = 0; k < pool.K(); ++k) {
        const auto& a = family.target_means().agent(k);
        const auto& b = pool.mu().agent(k);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (std::abs(a[i] - b[i]) > 1e-12) {
                throw SpecificationError(
                    "check_consistency: family means do not match the pool's means");
            }
        }
    }

    ConsistencyReport report;
    report.prior_probability = pool.p();

    if (family.finite_support()) {
        long double acc = 0.0L;
        for (const auto& atom : family.atoms()) {
            acc += static_cast<long double>(atom.weight) *
                   eval_linear_pool(pool, AgentPanel(atom.panel));
        }
        report.exact = true;
        report.expectation = static_cast<double>(acc);
        report.deviation = std::abs(report.expectation - pool.p());
        report.pass = report.deviation < 1e-12;
        return report;
    }

    if (draws == 0) throw ShapeError("check_consistency: sampled families need draws");
    auto rng = make_stream(seed, 0);
    long double sum = 0.0L;
    long double sumsq = 0.0L;
    for (std::size_t i = 0; i < draws; ++i) {
        const double v = eval_linear_pool(pool, family.sample(rng));
        sum += v;
        sumsq += static_cast<long double>(v) * v;
    }
    const auto count = static_cast<long double>(draws);
    const double mean = static_cast<double>(sum / count);
    const double var = std::max(0.0, static_cast<double>((sumsq - sum * sum / count) /
                                                         (count - 1.0L)));
    report.exact = false;
    report.draws = draws;
    report.expectation = mean;
    report.deviation = std::abs(mean - pool.p());
    report.standard_error = std::sqrt(var / static_cast<double>(draws));
    report.pass = report.deviation <= std::max(5.0 * report.standard_error, 1e-12);
    return report;
}

InvarianceReport check_coefficient_invariance(const LinearPool& pool, int dropped_agent) {
    if (pool.K() < 2) {
        throw ShapeError("check_coefficient_invariance: nothing to drop at K=1");
    }
    if (dropped_agent < 0 || dropped_agent >= pool.K()) {
        throw ShapeError("check_coefficient_invariance: agent index out of range");
    }

    // Analytic marginalization replaces the dropped forecast by its mean,
    // which erases its centered term and leaves p and the surviving
    // coefficients exactly as they were. The tensor route must agree.
    const PiTensor tensor = pool_to_pi(pool);
    const PiTensor reduced =
        tensor.marginalize(dropped_agent, pool.mu().agent(dropped_agent));
    const LinearPool recovered = pi_to_pool(reduced, pool.mu().without_agent(dropped_agent));

    InvarianceReport report;
    report.dropped_agent = dropped_agent;
    report.baseline_deviation = std::abs(recovered.p() - pool.p());
    int pos = 0;
    for (int k = 0; k < pool.K(); ++k) {
        if (k == dropped_agent) continue;
        const auto& original = pool.lambda()[static_cast<std::size_t>(k)];
        const auto& survived = recovered.lambda()[static_cast<std::size_t>(pos++)];
        for (std::size_t i = 0; i < original.size(); ++i) {
            report.max_lambda_deviation =
                std::max(report.max_lambda_deviation, std::abs(original[i] - survived[i]));
        }
    }
    report.pass =
        report.max_lambda_deviation <= 1e-10 && report.baseline_deviation <= 1e-10;
    return report;
}

EquivalenceReport brute_force_equivalence(int K, int n, std::size_t trials,
                                          std::uint64_t seed) {
    std::size_t size = 1;
    for (int k = 0; k < K; ++k) {
        size *= static_cast<std::size_t>(n + 1);
        if (size > 100'000) {
            throw CapabilityError("brute_force_equivalence: (n+1)^K exceeds 1e5");
        }
    }

    EquivalenceReport report;
    report.K = K;
    report.n = n;
    report.trials = trials;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        auto rng = make_stream(seed, trial);
        const LinearPool pool = random_valid_pool(K, n, rng);
        const AgentPanel panel = random_panel(K, n, rng);
        const double direct = eval_linear_pool(pool, panel);
        const double tensor = eval_pi_form(pool_to_pi(pool), panel);
        report.max_abs_deviation =
            std::max(report.max_abs_deviation, std::abs(direct - tensor));
    }
    report.pass = report.max_abs_deviation < 1e-12;
    return report;
}

MarginalMeans random_means(int K, int n, std::mt19937_64& rng) {
    const auto width = static_cast<std::size_t>(n + 1);
    const std::vector<double> flat(width, 1.0);
    const double uniform = 1.0 / static_cast<double>(width);
    std::vector<std::vector<double>> means;
    means.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        std::vector<double> draw = sample_dirichlet(flat, rng);
        for (double& v : draw) v = 0.9 * v + 0.1 * uniform; // keep strictly interior
        means.push_back(std::move(draw));
    }
    return MarginalMeans(std::move(means));
}

AgentPanel random_panel(int K, int n, std::mt19937_64& rng) {
    const std::vector<double> flat(static_cast<std::size_t>(n + 1), 1.0);
    std::vector<SimplexForecast> forecasts;
    forecasts.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        forecasts.emplace_back(sample_dirichlet(flat, rng));
    }
    return AgentPanel(std::move(forecasts));
}

LinearPool random_valid_pool(int K, int n, std::mt19937_64& rng) {
    MarginalMeans mu = random_means(K, n, rng);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double p = 0.25 + 0.5 * unif(rng);

    const auto width = static_cast<std::size_t>(n + 1);
    std::vector<std::vector<double>> lambda(static_cast<std::size_t>(K),
                                            std::vector<double>(width, 0.0));
    double span_lo = 0.0;
    double span_hi = 0.0;
    for (int k = 0; k < K; ++k) {
        auto& lam = lambda[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i + 1 < width; ++i) lam[i] = 2.0 * unif(rng) - 1.0;
        const auto& mean = mu.agent(k);
        double dot = 0.0;
        for (std::size_t i = 0; i < width; ++i) dot += lam[i] * mean[i];
        span_lo += *std::min_element(lam.begin(), lam.end()) - dot;
        span_hi += *std::max_element(lam.begin(), lam.end()) - dot;
    }

    // Scale the coefficients so every vertex value p + s*span stays inside
    // (0,1) with margin.
    double scale = 1.0;
    if (span_lo < 0.0) scale = std::min(scale, p / -span_lo);
    if (span_hi > 0.0) scale = std::min(scale, (1.0 - p) / span_hi);
    scale *= 0.3 + 0.6 * unif(rng);
    for (auto& lam : lambda) {
        for (double& v : lam) v *= scale;
    }
    return LinearPool(p, std::move(lambda), std::move(mu));
}

} // namespace predsynth
