#pragma once

#include <span>
#include <string>
#include <vector>

namespace predsynth {

double normal_pdf(double x, double mean = 0.0, double stddev = 1.0);
double normal_cdf(double x, double mean = 0.0, double stddev = 1.0);

/// Inverse of normal_cdf. Acklam's rational approximation polished with
/// one Halley step; accurate to ~1e-15 over (0,1).
double normal_quantile(double u, double mean = 0.0, double stddev = 1.0);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1,1]; nodes found by Newton iteration on the
/// Legendre recurrence. Exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_legendre(int n);

/// The same rule mapped onto [a,b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Sum with long double accumulation; used wherever a sum-to-one
/// invariant is checked at 1e-12.
double stable_sum(std::span<const double> values);

/// Shortest representation that round-trips a double (17 significant digits).
std::string format_g17(double v);

} // namespace predsynth
