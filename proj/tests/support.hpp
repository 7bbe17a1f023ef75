#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "relcone/branch.hpp"
#include "relcone/cone.hpp"
#include "relcone/join.hpp"

namespace testing_support {

using relcone::Branch;
using relcone::Cyclotomic;
using relcone::LinearCone;
using relcone::Matrix;
using relcone::Vector;
using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi);
bool chance(Rng& rng, double p);

// +-p/q * zeta_N^j with p, q <= 3 and N in {1, 2, 3, 4, 6}.
Cyclotomic small_coefficient(Rng& rng);
Cyclotomic small_root_of_unity(Rng& rng);
// Invertible n x n matrix with entries in -2..2.
Matrix random_invertible(Rng& rng, std::size_t n);

// Plain polynomials, kept apart from relcone::Series on purpose.
using Poly = std::map<long, Cyclotomic>;
Poly poly_add(const Poly& a, const Poly& b, const Cyclotomic& scale_b = Cyclotomic(1));
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_compose(const Poly& outer, const Poly& inner);
// p(c t^m)
Poly poly_rescale(const Poly& p, const Cyclotomic& c, long m);
long poly_degree(const Poly& p);
std::string poly_text(const Poly& p);

// 1 + (random terms of degree <= max_degree); exact or truncated at `trunc`.
relcone::Series random_unit_series(Rng& rng, long max_degree);
// Order-one series a t + ... with a nonzero.
relcone::Series random_order_one(Rng& rng, long max_degree);

// Germ (t^k, phi_2, ..., phi_n) with ord phi_i > k and degree <= max_degree.
std::vector<Poly> random_standard(Rng& rng, std::size_t n, long k, long max_degree);

// Cone of two standard germs with common tangent e_1, straight from the
// formula: planes span(e_1, v) over eps^l = 1, the line e_1 when a difference
// vanishes. Works on exact polynomials only.
LinearCone formula_cone(const std::vector<Poly>& phi, long k, const std::vector<Poly>& psi, long l);

LinearCone image_cone(const Matrix& m, const LinearCone& c);

// M * germ(reparam(t)) as an exact relcone::Branch.
Branch disguise(const std::string& label, const Matrix& m, const std::vector<Poly>& germ, const Poly& reparam);

enum class Kind { Transversal, Shared, SameParametrization, SameGerm };

struct Planted {
    Kind kind = Kind::Shared;
    long k = 1, l = 1;
    Branch x, y;
    LinearCone expected;
    Matrix frame;
    std::vector<Poly> phi, psi;  // standard forms behind x and y (tangent e_1)
};

struct PlantOptions {
    long max_multiplicity = 6;
    long max_degree = 12;
};

Planted planted_pair(Rng& rng, const PlantOptions& options = {});

std::string describe(const Planted& p);

// A planted pair moved to an affine point with nonzero first coordinate,
// written as curve data in chart 0 and again in chart 1. The chart 1 copy
// is truncated at `precision`.
struct ChartPair {
    Planted planted;
    relcone::CurveData chart0, chart1;
};
ChartPair two_chart_instance(Rng& rng, long precision);

}  // namespace testing_support
