#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "relcone/branch.hpp"
#include "relcone/cone.hpp"

namespace relcone {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Unit secant directions (y(tau) - x(t)) / |y(tau) - x(t)| for parameter
/// pairs drawn uniformly from the disk of radius r.
struct SecantSample {
    double radius = 0;
    std::uint64_t seed = 0;
    std::size_t requested = 0;
    std::vector<std::pair<Complex, Complex>> parameters;  // kept pairs (t, tau)
    std::vector<ComplexVector> directions;
    std::size_t discarded = 0;  // pairs below the degeneracy floor
};

/// Parameter pairs the sampler would use; deterministic in (seed, r, m).
std::vector<std::pair<Complex, Complex>> sample_parameters(double radius, std::size_t count, std::uint64_t seed);

/// Secant directions for explicit parameter pairs. Throws AllDegenerate when
/// every pair falls below 1e-14 * r^max(k, l).
SecantSample evaluate_secants(const Branch& x, const Branch& y, double radius,
                              const std::vector<std::pair<Complex, Complex>>& parameters);

SecantSample sample(const Branch& x, const Branch& y, double radius, std::size_t count, std::uint64_t seed);

struct ValidationReport {
    double tol = 0;
    /// Largest distance from a sampled direction to the nearest cone subspace.
    double soundness = 0;
    /// Per subspace: fraction of fixed probe directions within tol of a sample.
    std::vector<double> coverage;
    bool pass = false;  // soundness <= tol
};

ValidationReport validate(const SecantSample& s, const LinearCone& cone, double tol);

struct SweepOptions {
    std::size_t samples = 2000;
    std::uint64_t seed = 7;
    double tol = 1e-2;
};

/// Soundness at each radius; radii must be strictly decreasing.
std::vector<double> convergence_sweep(const Branch& x, const Branch& y, const LinearCone& cone,
                                      const std::vector<double>& radii, const SweepOptions& options = {});

/// Distance from a unit vector to span(basis) after numeric orthonormalization.
double distance_to_span(const ComplexVector& unit, const std::vector<ComplexVector>& basis);

/// sqrt(1 - |<a, b>|^2) for unit vectors: the distance between complex lines.
double line_distance(const ComplexVector& a, const ComplexVector& b);

}  // namespace relcone
