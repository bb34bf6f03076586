#include "predsynth/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "predsynth/errors.hpp"
#include "predsynth/numeric.hpp"
#include "predsynth/rng.hpp"

namespace predsynth {

namespace {

std::size_t checked_tensor_size(int K, int n) {
    if (K < 1) throw ShapeError("PiTensor: need at least one agent");
    if (n < 1) throw ShapeError("PiTensor: need at least one forecast event");
    std::size_t size = 1;
    const auto base = static_cast<std::size_t>(n + 1);
    for (int k = 0; k < K; ++k) {
        if (size > PiTensor::kMaxEntries / base) {
            throw CapabilityError("PiTensor: (n+1)^K exceeds the dense-storage limit");
        }
        size *= base;
    }
    return size;
}

} // namespace

PiTensor::PiTensor(int K, int n, std::vector<double> values)
    : K_(K), n_(n), values_(std::move(values)) {
    const std::size_t expected = checked_tensor_size(K_, n_);
    if (values_.size() != expected) {
        throw ShapeError("PiTensor: expected " + std::to_string(expected) + " entries, got " +
                         std::to_string(values_.size()));
    }
    for (double& v : values_) {
        if (!(v >= -1e-9) || !(v <= 1.0 + 1e-9)) {
            throw InvalidCoefficientsError("PiTensor: entry " + format_g17(v) +
                                           " outside [0,1]");
        }
        v = std::clamp(v, 0.0, 1.0);
    }
}

PiTensor PiTensor::constant(int K, int n, double value) {
    return PiTensor(K, n, std::vector<double>(checked_tensor_size(K, n), value));
}

std::size_t PiTensor::offset(std::span<const int> index) const {
    if (static_cast<int>(index.size()) != K_) {
        throw ShapeError("PiTensor: index arity mismatch");
    }
    std::size_t off = 0;
    const auto base = static_cast<std::size_t>(n_ + 1);
    for (int digit : index) {
        if (digit < 0 || digit > n_) throw ShapeError("PiTensor: index digit out of range");
        off = off * base + static_cast<std::size_t>(digit);
    }
    return off;
}

PiTensor PiTensor::marginalize(int k, std::span<const double> weights) const {
    if (K_ < 2) throw ShapeError("PiTensor: cannot marginalize the only agent");
    if (k < 0 || k >= K_) throw ShapeError("PiTensor: agent index out of range");
    if (static_cast<int>(weights.size()) != n_ + 1) {
        throw ShapeError("PiTensor: marginalization weights must have n+1 entries");
    }

    const auto base = static_cast<std::size_t>(n_ + 1);
    std::size_t stride = 1;
    for (int j = K_ - 1; j > k; --j) stride *= base;

    std::vector<double> out;
    out.reserve(values_.size() / base);
    detail::for_each_index(K_ - 1, n_ + 1, [&](std::span<const int> reduced) {
        std::size_t off = 0;
        int pos = 0;
        for (int j = 0; j < K_; ++j) {
            const std::size_t digit =
                (j == k) ? 0 : static_cast<std::size_t>(reduced[static_cast<std::size_t>(pos++)]);
            off = off * base + digit;
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < base; ++i) {
            acc += values_[off + i * stride] * weights[i];
        }
        out.push_back(acc);
    });
    return PiTensor(K_ - 1, n_, std::move(out));
}

LinearPool::LinearPool(double p, std::vector<std::vector<double>> lambda, MarginalMeans mu)
    : LinearPool(p, std::move(lambda), std::move(mu), /*enforce=*/true) {}

LinearPool LinearPool::unchecked(double p, std::vector<std::vector<double>> lambda,
                                 MarginalMeans mu) {
    return LinearPool(p, std::move(lambda), std::move(mu), /*enforce=*/false);
}

LinearPool::LinearPool(double p, std::vector<std::vector<double>> lambda, MarginalMeans mu,
                       bool enforce)
    : p_(p), K_(mu.K()), n_(mu.n()), lambda_(std::move(lambda)), mu_(std::move(mu)) {
    if (static_cast<int>(lambda_.size()) != K_) {
        throw ShapeError("LinearPool: one coefficient vector per agent required");
    }
    const auto width = static_cast<std::size_t>(n_ + 1);
    for (auto& lam : lambda_) {
        if (lam.size() == width - 1) {
            lam.push_back(0.0); // residual coefficient implied
        }
        if (lam.size() != width) {
            throw ShapeError("LinearPool: coefficient vectors must have n or n+1 entries");
        }
        // Canonical form: the residual coefficient is zero. Subtracting a
        // constant from every coefficient of one agent leaves the pool's
        // value unchanged on the simplex.
        const double shift = lam.back();
        if (shift != 0.0) {
            for (double& v : lam) v -= shift;
        }
    }

    base_ = p_;
    for (int k = 0; k < K_; ++k) {
        const auto& lam = lambda_[static_cast<std::size_t>(k)];
        const auto& mean = mu_.agent(k);
        double dot = 0.0;
        for (std::size_t i = 0; i < width; ++i) dot += lam[i] * mean[i];
        base_ -= dot;
    }

    const auto [lo, hi] = vertex_bounds();
    valid_ = lo >= -kConstructionSlack && hi <= 1.0 + kConstructionSlack;
    if (enforce && !valid_) {
        throw InvalidCoefficientsError(
            "LinearPool: vertex values span [" + format_g17(lo) + ", " + format_g17(hi) +
            "], leaving [0,1]; the coefficients violate the validity inequalities");
    }
}

std::pair<double, double> LinearPool::vertex_bounds() const {
    // The vertex value is base + sum_k lambda_{k,i_k}, so the extremes
    // factor across agents.
    double lo = base_;
    double hi = base_;
    for (const auto& lam : lambda_) {
        lo += *std::min_element(lam.begin(), lam.end());
        hi += *std::max_element(lam.begin(), lam.end());
    }
    return {lo, hi};
}

double LinearPool::vertex_value(std::span<const int> index) const {
    if (static_cast<int>(index.size()) != K_) {
        throw ShapeError("LinearPool: vertex index arity mismatch");
    }
    double value = base_;
    for (int k = 0; k < K_; ++k) {
        const int i = index[static_cast<std::size_t>(k)];
        if (i < 0 || i > n_) throw ShapeError("LinearPool: vertex index out of range");
        value += lambda_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    }
    return value;
}

namespace {

void check_same_shape(const LinearPool& pool, const AgentPanel& panel) {
    if (panel.K() != pool.K() || panel.n() != pool.n()) {
        throw ShapeError("pool and panel dimensions disagree");
    }
}

void require_valid(const LinearPool& pool) {
    if (!pool.is_valid()) {
        throw InvalidCoefficientsError(
            "pool coefficients violate the validity inequalities; evaluation refused");
    }
}

} // namespace

double eval_linear_pool(const LinearPool& pool, const AgentPanel& panel) {
    check_same_shape(pool, panel);
    require_valid(pool);
    double value = pool.p();
    for (int k = 0; k < pool.K(); ++k) {
        const auto& lam = pool.lambda()[static_cast<std::size_t>(k)];
        const auto& mean = pool.mu().agent(k);
        const auto& f = panel.agent(k);
        for (std::size_t i = 0; i < lam.size(); ++i) {
            value += lam[i] * (f[i] - mean[i]);
        }
    }
    return value;
}

PiTensor pool_to_pi(const LinearPool& pool) {
    require_valid(pool);
    std::vector<double> values;
    values.reserve(checked_tensor_size(pool.K(), pool.n()));
    detail::for_each_index(pool.K(), pool.n() + 1, [&](std::span<const int> idx) {
        const double v = pool.vertex_value(idx);
        if (v < -1e-12 || v > 1.0 + 1e-12) {
            throw InvalidCoefficientsError("pool_to_pi: vertex value " + format_g17(v) +
                                           " outside [0,1]");
        }
        values.push_back(std::clamp(v, 0.0, 1.0));
    });
    return PiTensor(pool.K(), pool.n(), std::move(values));
}

LinearPool pi_to_pool(const PiTensor& pi, const MarginalMeans& mu) {
    if (mu.K() != pi.K() || mu.n() != pi.n()) {
        throw ShapeError("pi_to_pool: tensor and means dimensions disagree");
    }
    const int K = pi.K();
    const int n = pi.n();
    const auto base = static_cast<std::size_t>(n + 1);
    const auto& values = pi.values();
    const double pi_base = values.back(); // all-residual vertex

    // lambda_{k,i} = Pi(base with slot k set to i) - Pi(base).
    std::vector<std::vector<double>> lambda(static_cast<std::size_t>(K));
    std::size_t stride = 1;
    for (int k = K - 1; k >= 0; --k) {
        auto& lam = lambda[static_cast<std::size_t>(k)];
        lam.resize(base);
        const std::size_t top = values.size() - 1;
        for (std::size_t i = 0; i < base; ++i) {
            lam[i] = values[top - (base - 1 - i) * stride] - pi_base;
        }
        stride *= base;
    }

    // The tensor must be additively separable for any pool to reproduce it.
    std::size_t off = 0;
    detail::for_each_index(K, n + 1, [&](std::span<const int> idx) {
        double predicted = pi_base;
        for (int k = 0; k < K; ++k) {
            predicted += lambda[static_cast<std::size_t>(k)]
                               [static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
        }
        if (std::abs(values[off] - predicted) > 1e-10) {
            throw NonSeparableError(
                "pi_to_pool: tensor is not additively separable (entry deviates by " +
                format_g17(values[off] - predicted) + "); no linear pool reproduces it");
        }
        ++off;
    });

    double p = pi_base;
    for (int k = 0; k < K; ++k) {
        const auto& lam = lambda[static_cast<std::size_t>(k)];
        const auto& mean = mu.agent(k);
        for (std::size_t i = 0; i < base; ++i) p += lam[i] * mean[i];
    }
    return LinearPool(p, std::move(lambda), mu);
}

double eval_pi_form(const PiTensor& pi, const AgentPanel& panel) {
    if (panel.K() != pi.K() || panel.n() != pi.n()) {
        throw ShapeError("eval_pi_form: tensor and panel dimensions disagree");
    }
    const auto& values = pi.values();
    long double acc = 0.0L;
    std::size_t off = 0;
    detail::for_each_index(pi.K(), pi.n() + 1, [&](std::span<const int> idx) {
        double weight = 1.0;
        for (int k = 0; k < pi.K(); ++k) {
            weight *= panel.agent(k)[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
        }
        acc += static_cast<long double>(values[off]) * weight;
        ++off;
    });
    return static_cast<double>(acc);
}

bool sample_event(const PiTensor& pi, const AgentPanel& panel, std::mt19937_64& rng) {
    if (panel.K() != pi.K() || panel.n() != pi.n()) {
        throw ShapeError("sample_event: tensor and panel dimensions disagree");
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto base = static_cast<std::size_t>(pi.n() + 1);
    std::size_t off = 0;
    for (int k = 0; k < pi.K(); ++k) {
        const auto& f = panel.agent(k);
        const double u = unif(rng);
        double acc = 0.0;
        std::size_t chosen = base - 1;
        for (std::size_t i = 0; i < base; ++i) {
            acc += f[i];
            if (u < acc) {
                chosen = i;
                break;
            }
        }
        off = off * base + chosen;
    }
    return unif(rng) < pi.values()[off];
}

double sample_event_frequency(const PiTensor& pi, const AgentPanel& panel, std::size_t draws,
                              std::uint64_t seed, unsigned tasks) {
    if (draws == 0) throw ShapeError("sample_event_frequency: need at least one draw");
    std::vector<std::size_t> successes(std::max(1u, tasks), 0);
    run_chunked(draws, tasks, [&](unsigned task, std::size_t begin, std::size_t end) {
        auto rng = make_stream(seed, task);
        std::size_t count = 0;
        for (std::size_t i = begin; i < end; ++i) {
            if (sample_event(pi, panel, rng)) ++count;
        }
        successes[task] = count;
    });
    std::size_t total = 0;
    for (std::size_t s : successes) total += s;
    return static_cast<double>(total) / static_cast<double>(draws);
}

ValidityReport validity_check(const LinearPool& pool) {
    ValidityReport report;
    const std::size_t size = checked_tensor_size(pool.K(), pool.n());
    if (size <= PiTensor::kMaxEntries) {
        double lo = 2.0;
        double hi = -1.0;
        detail::for_each_index(pool.K(), pool.n() + 1, [&](std::span<const int> idx) {
            const double v = pool.vertex_value(idx);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        });
        report.min_vertex = lo;
        report.max_vertex = hi;
    } else {
        std::tie(report.min_vertex, report.max_vertex) = pool.vertex_bounds();
    }
    report.pass = report.min_vertex >= -1e-12 && report.max_vertex <= 1.0 + 1e-12;
    return report;
}

} // namespace predsynth
