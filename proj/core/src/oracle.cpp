#include "relcone/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "relcone/errors.hpp"

namespace relcone {

namespace {

// Numeric copy of a translated germ: per coordinate, (exponent, coefficient).
using NumericSeries = std::vector<std::pair<long, Complex>>;

std::vector<NumericSeries> numeric_germ(const Branch& b) {
    std::vector<NumericSeries> out;
    for (const auto& s : local_coords(b)) {
        NumericSeries ns;
        for (const auto& [e, c] : s.terms()) ns.emplace_back(e, c.to_complex());
        out.push_back(std::move(ns));
    }
    return out;
}

ComplexVector evaluate(const std::vector<NumericSeries>& germ, Complex t) {
    ComplexVector out(germ.size());
    for (std::size_t i = 0; i < germ.size(); ++i) {
        Complex power(1.0, 0.0);
        long current = 0;
        Complex acc(0.0, 0.0);
        for (const auto& [e, c] : germ[i]) {
            while (current < e) {
                power *= t;
                ++current;
            }
            acc += c * power;
        }
        out[i] = acc;
    }
    return out;
}

double norm(const ComplexVector& v) {
    double s = 0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

std::vector<ComplexVector> orthonormalize(const std::vector<ComplexVector>& basis) {
    std::vector<ComplexVector> q;
    for (auto v : basis) {
        // Two Gram-Schmidt passes keep the basis orthogonal to working precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : q) {
                const Complex c = inner(u, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
            }
        }
        const double n = norm(v);
        if (n < 1e-300) continue;
        for (auto& x : v) x /= n;
        q.push_back(std::move(v));
    }
    return q;
}

// Distances this small are rounding error on unit vectors.
constexpr double kRoundoff = 1e-13;

double residual(const ComplexVector& unit, const std::vector<ComplexVector>& q) {
    if (q.size() >= unit.size()) return 0.0;  // the whole space
    ComplexVector r = unit;
    for (const auto& u : q) {
        const Complex c = inner(u, unit);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * u[i];
    }
    const double d = norm(r);
    return d < kRoundoff ? 0.0 : d;
}

std::vector<ComplexVector> numeric_basis(const Subspace& s) {
    std::vector<ComplexVector> out;
    for (const auto& row : s.basis) {
        ComplexVector v;
        for (const auto& x : row) v.push_back(x.to_complex());
        out.push_back(std::move(v));
    }
    return out;
}

// Fixed probe directions in an orthonormal basis of a line or plane.
std::vector<ComplexVector> probes(const std::vector<ComplexVector>& q) {
    if (q.size() == 1) return {q[0]};
    std::vector<ComplexVector> out{q[0], q[1]};
    const double pi = std::numbers::pi;
    for (int a = 1; a <= 3; ++a) {
        const double theta = a * pi / 8;
        for (int b = 0; b < 4; ++b) {
            const Complex phase = std::polar(1.0, b * pi / 2);
            ComplexVector v(q[0].size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::cos(theta) * q[0][i] + std::sin(theta) * phase * q[1][i];
            out.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<Complex, Complex>> sample_parameters(double radius, std::size_t count, std::uint64_t seed) {
    if (!(radius > 0)) throw std::invalid_argument("sampling radius must be positive");
    std::mt19937_64 gen(seed);
    // 53 random bits per uniform; avoids implementation-defined distributions.
    auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    auto disk = [&] {
        const double r = radius * std::sqrt(uniform());
        const double angle = 2 * std::numbers::pi * uniform();
        return std::polar(r, angle);
    };
    std::vector<std::pair<Complex, Complex>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Complex t = disk();
        Complex tau = disk();
        out.emplace_back(t, tau);
    }
    return out;
}

SecantSample evaluate_secants(const Branch& x, const Branch& y, double radius,
                              const std::vector<std::pair<Complex, Complex>>& parameters) {
    const auto gx = numeric_germ(x);
    const auto gy = numeric_germ(y);
    if (gx.size() != gy.size()) throw InvalidBranch("branches live in different dimensions");
    const long kmax = std::max(degree(x), degree(y));
    const double floor = 1e-14 * std::pow(radius, static_cast<double>(kmax));

    SecantSample s;
    s.radius = radius;
    s.requested = parameters.size();
    for (const auto& [t, tau] : parameters) {
        const ComplexVector px = evaluate(gx, t);
        ComplexVector d = evaluate(gy, tau);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= px[i];
        const double n = norm(d);
        if (!(n >= floor) || n == 0) {
            ++s.discarded;
            continue;
        }
        for (auto& v : d) v /= n;
        s.parameters.emplace_back(t, tau);
        s.directions.push_back(std::move(d));
    }
    if (s.directions.empty()) throw AllDegenerate();
    return s;
}

SecantSample sample(const Branch& x, const Branch& y, double radius, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw std::invalid_argument("sample count must be positive");
    if (radius > 0.1) throw std::invalid_argument("sampling radius must be at most 0.1");
    SecantSample s = evaluate_secants(x, y, radius, sample_parameters(radius, count, seed));
    s.seed = seed;
    return s;
}

double distance_to_span(const ComplexVector& unit, const std::vector<ComplexVector>& basis) {
    return residual(unit, orthonormalize(basis));
}

double line_distance(const ComplexVector& a, const ComplexVector& b) {
    const double overlap = std::abs(inner(a, b));
    return std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
}

ValidationReport validate(const SecantSample& s, const LinearCone& cone, double tol) {
    if (cone.empty()) throw std::invalid_argument("validation needs a nonempty cone");
    std::vector<std::vector<ComplexVector>> spans;
    for (const auto& sub : cone.subspaces()) spans.push_back(orthonormalize(numeric_basis(sub)));

    ValidationReport report;
    report.tol = tol;
    for (const auto& d : s.directions) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : spans) best = std::min(best, residual(d, q));
        report.soundness = std::max(report.soundness, best);
    }
    for (const auto& q : spans) {
        const auto probe_set = probes(q);
        std::size_t hit = 0;
        for (const auto& p : probe_set) {
            const bool covered = std::any_of(s.directions.begin(), s.directions.end(),
                                             [&](const ComplexVector& d) { return line_distance(p, d) <= tol; });
            hit += covered;
        }
        report.coverage.push_back(static_cast<double>(hit) / static_cast<double>(probe_set.size()));
    }
    report.pass = report.soundness <= tol;
    return report;
}

std::vector<double> convergence_sweep(const Branch& x, const Branch& y, const LinearCone& cone,
                                      const std::vector<double>& radii, const SweepOptions& options) {
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (!(radii[i] < radii[i - 1])) throw std::invalid_argument("radii must be strictly decreasing");
    }
    std::vector<double> out;
    out.reserve(radii.size());
    for (double r : radii) out.push_back(validate(sample(x, y, r, options.samples, options.seed), cone, options.tol).soundness);
    return out;
}

}  // namespace relcone
