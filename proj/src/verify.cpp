#include "predsynth/verify.hpp"

#include <algorithm>
#include <string>

#include "predsynth/discrete.hpp"
#include "predsynth/priors.hpp"
#include "predsynth/rng.hpp"

namespace predsynth {

namespace {

ReportRecord equivalence_record(int K, int n, std::size_t trials, std::uint64_t seed) {
    const EquivalenceReport r = brute_force_equivalence(K, n, trials, seed);
    ReportRecord rec;
    rec.name = "equivalence.K" + std::to_string(K) + ".n" + std::to_string(n);
    rec.pass = r.pass;
    rec.add("trials", static_cast<std::uint64_t>(r.trials));
    rec.add("max_abs_deviation", r.max_abs_deviation);
    rec.add("tolerance", 1e-12);
    return rec;
}

ReportRecord consistency_record(const std::string& name, const LinearPool& pool,
                                const PriorFamily& family, std::size_t draws,
                                std::uint64_t seed) {
    ConsistencyReport r = check_consistency(pool, family, draws, seed);
    int attempts = 1;
    if (!r.exact && !r.pass) {
        // Documented flaky budget for the 5-sigma band: one rerun on a
        // derived seed.
        r = check_consistency(pool, family, draws, seed ^ 0x5EED5EED5EED5EEDULL);
        attempts = 2;
    }
    ReportRecord rec;
    rec.name = name;
    rec.pass = r.pass;
    rec.add("exact", r.exact);
    rec.add("baseline_p", r.prior_probability);
    rec.add("expectation", r.expectation);
    rec.add("deviation", r.deviation);
    if (!r.exact) {
        rec.add("draws", static_cast<std::uint64_t>(r.draws));
        rec.add("standard_error", r.standard_error);
        rec.add("attempts", attempts);
    }
    return rec;
}

ReportRecord invariance_record(int K, int n, std::size_t pools, std::uint64_t seed) {
    double max_lambda = 0.0;
    double max_baseline = 0.0;
    bool pass = true;
    for (std::size_t t = 0; t < pools; ++t) {
        auto rng = make_stream(seed, t);
        const LinearPool pool = random_valid_pool(K, n, rng);
        for (int drop = 0; drop < K; ++drop) {
            const InvarianceReport r = check_coefficient_invariance(pool, drop);
            max_lambda = std::max(max_lambda, r.max_lambda_deviation);
            max_baseline = std::max(max_baseline, r.baseline_deviation);
            pass = pass && r.pass;
        }
    }
    ReportRecord rec;
    rec.name = "invariance.K" + std::to_string(K);
    rec.pass = pass;
    rec.add("pools", static_cast<std::uint64_t>(pools));
    rec.add("n", n);
    rec.add("max_lambda_deviation", max_lambda);
    rec.add("max_baseline_deviation", max_baseline);
    rec.add("tolerance", 1e-10);
    return rec;
}

} // namespace

Report run_verify_suite(const VerifyOptions& options) {
    Report report;

    ReportRecord header;
    header.name = "run";
    header.pass = true;
    header.add("seed", options.seed);
    header.add("trials", static_cast<std::uint64_t>(options.trials));
    header.add("mc_draws", static_cast<std::uint64_t>(options.mc_draws));
    report.records.push_back(std::move(header));

    for (int K = 1; K <= 3; ++K) {
        for (int n = 1; n <= 4; ++n) {
            report.records.push_back(equivalence_record(
                K, n, options.trials, options.seed + static_cast<std::uint64_t>(16 * K + n)));
        }
    }

    const int shapes[][2] = {{1, 1}, {2, 2}, {3, 3}};
    for (const auto& shape : shapes) {
        const int K = shape[0];
        const int n = shape[1];
        auto rng = make_stream(options.seed, 1000 + static_cast<std::uint64_t>(K));
        const LinearPool pool = random_valid_pool(K, n, rng);
        const std::string suffix = ".K" + std::to_string(K) + ".n" + std::to_string(n);

        report.records.push_back(consistency_record(
            "consistency.two_point" + suffix, pool,
            two_point_prior(pool.mu()), 0, options.seed));
        report.records.push_back(consistency_record(
            "consistency.dirichlet" + suffix, pool,
            dirichlet_prior(pool.mu(),
                            std::vector<double>(static_cast<std::size_t>(K), 2.0)),
            options.mc_draws, options.seed + 7));
        report.records.push_back(consistency_record(
            "consistency.dependent_mixture" + suffix, pool,
            PriorFamily::dependent_mixture(pool.mu()), options.mc_draws,
            options.seed + 13));
    }

    report.records.push_back(invariance_record(2, 2, 100, options.seed + 21));
    report.records.push_back(invariance_record(3, 2, 100, options.seed + 22));

    if (options.inject_invalid_pool) {
        // Self-test: an intentionally invalid pool must be caught.
        const MarginalMeans mu({{0.5, 0.5}});
        const LinearPool bad = LinearPool::unchecked(0.5, {{1.2, 0.0}}, mu);
        const ValidityReport v = validity_check(bad);
        ReportRecord rec;
        rec.name = "validity_check.injected_invalid_pool";
        rec.pass = v.pass; // expected false: min/max leave [0,1]
        rec.add("min_vertex", v.min_vertex);
        rec.add("max_vertex", v.max_vertex);
        rec.add("note", "self-test record; failure here is the expected outcome");
        report.records.push_back(std::move(rec));
    }

    return report;
}

} // namespace predsynth
