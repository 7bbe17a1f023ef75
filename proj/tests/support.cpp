#include "support.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "relcone/linalg.hpp"
#include "relcone/series.hpp"

namespace testing_support {

using relcone::Series;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

bool chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

Cyclotomic small_root_of_unity(Rng& rng) {
    static const long orders[] = {1, 2, 3, 4, 6};
    const long n = orders[uniform(rng, 0, 4)];
    return Cyclotomic::root_of_unity(n, uniform(rng, 0, n - 1));
}

Cyclotomic small_coefficient(Rng& rng) {
    const long p = uniform(rng, 1, 3) * (chance(rng, 0.5) ? 1 : -1);
    const long q = uniform(rng, 1, 3);
    return Cyclotomic(relcone::Rational(p, q)) * (chance(rng, 0.6) ? Cyclotomic(1) : small_root_of_unity(rng));
}

Matrix random_invertible(Rng& rng, std::size_t n) {
    while (true) {
        Matrix m(n, Vector(n));
        for (auto& row : m) {
            for (auto& x : row) x = Cyclotomic(uniform(rng, -2, 2));
        }
        if (relcone::rank(m) == n) return m;
    }
}

Poly poly_add(const Poly& a, const Poly& b, const Cyclotomic& scale_b) {
    Poly out = a;
    for (const auto& [e, c] : b) {
        Cyclotomic v = out[e] + scale_b * c;
        if (v.is_zero()) {
            out.erase(e);
        } else {
            out[e] = v;
        }
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) out = poly_add(out, Poly{{ea + eb, ca * cb}});
    }
    return out;
}

Poly poly_compose(const Poly& outer, const Poly& inner) {
    Poly out;
    Poly power{{0, Cyclotomic(1)}};
    long reached = 0;
    for (const auto& [e, c] : outer) {
        while (reached < e) {
            power = poly_mul(power, inner);
            ++reached;
        }
        out = poly_add(out, power, c);
    }
    return out;
}

Poly poly_rescale(const Poly& p, const Cyclotomic& c, long m) {
    Poly out;
    for (const auto& [e, a] : p) out[e * m] = a * c.pow(e);
    return out;
}

long poly_degree(const Poly& p) { return p.empty() ? -1 : p.rbegin()->first; }

std::string poly_text(const Poly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : p) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*t^" + std::to_string(e);
    }
    return out;
}

Series random_unit_series(Rng& rng, long max_degree) {
    Series::Terms terms{{0, Cyclotomic(1)}};
    const long count = uniform(rng, 1, 4);
    for (long i = 0; i < count; ++i) terms[uniform(rng, 1, max_degree)] = small_coefficient(rng);
    return Series::exact(std::move(terms));
}

Series random_order_one(Rng& rng, long max_degree) {
    Series::Terms terms{{1, small_coefficient(rng)}};
    const long count = uniform(rng, 1, 4);
    for (long i = 0; i < count; ++i) terms[uniform(rng, 2, max_degree)] = small_coefficient(rng);
    return Series::exact(std::move(terms));
}

std::vector<Poly> random_standard(Rng& rng, std::size_t n, long k, long max_degree) {
    std::vector<Poly> germ(n);
    germ[0] = Poly{{k, Cyclotomic(1)}};
    long g = k;
    for (std::size_t i = 1; i < n; ++i) {
        const long terms = uniform(rng, 0, 3);
        for (long j = 0; j < terms && k + 1 <= max_degree; ++j) {
            const long e = uniform(rng, k + 1, max_degree);
            germ[i] = poly_add(germ[i], Poly{{e, small_coefficient(rng)}});
        }
        for (const auto& [e, c] : germ[i]) g = std::gcd(g, e);
    }
    if (g > 1) {
        // Keep the parametrization injective.
        const auto i = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n) - 1));
        germ[i] = poly_add(germ[i], Poly{{k + 1, small_coefficient(rng)}});
    }
    return germ;
}

LinearCone formula_cone(const std::vector<Poly>& phi, long k, const std::vector<Poly>& psi, long l) {
    if (l > k) return formula_cone(psi, l, phi, k);
    const std::size_t n = phi.size();
    LinearCone out(n);
    for (long i = 1; i <= l; ++i) {
        const Cyclotomic eps = Cyclotomic::root_of_unity(l, i);
        std::vector<Poly> diff;
        for (std::size_t j = 0; j < n; ++j) {
            diff.push_back(poly_add(poly_rescale(phi[j], Cyclotomic(1), l), poly_rescale(psi[j], eps, k),
                                    Cyclotomic(-1)));
        }
        if (!diff[0].empty()) throw std::logic_error("first coordinate of a difference is nonzero");
        long order = -1;
        for (const auto& d : diff) {
            if (!d.empty() && (order < 0 || d.begin()->first < order)) order = d.begin()->first;
        }
        relcone::Provenance p;
        Vector e1 = relcone::unit_vector(n, 0);
        if (order < 0) {
            out.insert({e1}, p);
            continue;
        }
        Vector v;
        for (const auto& d : diff) {
            auto it = d.find(order);
            v.push_back(it == d.end() ? Cyclotomic{} : it->second);
        }
        out.insert({e1, v}, p);
    }
    return out;
}

LinearCone image_cone(const Matrix& m, const LinearCone& c) {
    LinearCone out(c.ambient());
    for (const auto& s : c.subspaces()) {
        Matrix image;
        for (const auto& row : s.basis) image.push_back(m * row);
        out.insert(image, s.provenance);
    }
    return out;
}

Branch disguise(const std::string& label, const Matrix& m, const std::vector<Poly>& germ, const Poly& reparam) {
    const std::size_t n = germ.size();
    std::vector<Poly> moved(n);
    for (std::size_t j = 0; j < n; ++j) moved[j] = poly_compose(germ[j], reparam);
    std::vector<Series> coords;
    for (std::size_t i = 0; i < n; ++i) {
        Poly row;
        for (std::size_t j = 0; j < n; ++j) row = poly_add(row, moved[j], m[i][j]);
        coords.push_back(Series::exact(Series::Terms(row.begin(), row.end())));
    }
    return relcone::make_branch(label, std::move(coords));
}

namespace {

Poly random_reparam(Rng& rng, bool quadratic) {
    Poly r{{1, small_root_of_unity(rng)}};
    if (quadratic) r[2] = small_coefficient(rng);
    return r;
}

}  // namespace

Planted planted_pair(Rng& rng, const PlantOptions& options) {
    Planted p;
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 3));
    // Small multiplicities are the common case; keep larger ones in the mix.
    auto multiplicity = [&] {
        return chance(rng, 0.6) ? uniform(rng, 1, 3) : uniform(rng, 1, options.max_multiplicity);
    };
    p.k = multiplicity();
    p.l = multiplicity();
    const double roll = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    p.kind = roll < 0.15 ? Kind::Transversal : roll < 0.8 ? Kind::Shared : roll < 0.9 ? Kind::SameParametrization
                                                                                       : Kind::SameGerm;
    if (p.kind == Kind::SameParametrization || p.kind == Kind::SameGerm) p.l = p.k;

    const bool quadratic = chance(rng, 0.4);
    const long degree_cap = quadratic ? options.max_degree / 2 : options.max_degree;
    p.frame = random_invertible(rng, n);
    p.phi = random_standard(rng, n, p.k, std::max(degree_cap, p.k + 1));

    switch (p.kind) {
        case Kind::Transversal: {
            // Tangent e_2: swap the first two coordinates of a standard germ.
            p.psi = random_standard(rng, n, p.l, std::max(degree_cap, p.l + 1));
            std::swap(p.psi[0], p.psi[1]);
            p.expected = LinearCone(n);
            p.expected.insert({p.frame * relcone::unit_vector(n, 0), p.frame * relcone::unit_vector(n, 1)}, {});
            break;
        }
        case Kind::Shared: {
            if (p.k == p.l && chance(rng, 0.5)) {
                // Nearly the same germ: the difference shows up late.
                p.psi = p.phi;
                const auto i = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n) - 1));
                const long e = uniform(rng, p.k + 1, std::max(degree_cap, p.k + 1));
                p.psi[i] = poly_add(p.psi[i], Poly{{e, small_coefficient(rng)}});
            } else {
                p.psi = random_standard(rng, n, p.l, std::max(degree_cap, p.l + 1));
            }
            p.expected = image_cone(p.frame, formula_cone(p.phi, p.k, p.psi, p.l));
            break;
        }
        case Kind::SameParametrization:
        case Kind::SameGerm:
            p.psi = p.phi;
            p.expected = image_cone(p.frame, formula_cone(p.phi, p.k, p.psi, p.l));
            break;
    }

    const Poly rx = random_reparam(rng, quadratic);
    const Poly ry = p.kind == Kind::SameParametrization ? rx : random_reparam(rng, quadratic);
    p.x = disguise("X", p.frame, p.phi, rx);
    p.y = disguise("Y", p.frame, p.psi, ry);
    return p;
}

std::string describe(const Planted& p) {
    static const char* kinds[] = {"transversal", "shared", "same parametrization", "same germ"};
    std::ostringstream out;
    out << kinds[static_cast<int>(p.kind)] << " k=" << p.k << " l=" << p.l << "\n  x = (";
    for (std::size_t i = 0; i < p.x.coords.size(); ++i) out << (i ? ", " : "") << p.x.coords[i].str();
    out << ")\n  y = (";
    for (std::size_t i = 0; i < p.y.coords.size(); ++i) out << (i ? ", " : "") << p.y.coords[i].str();
    out << ")";
    return out.str();
}

ChartPair two_chart_instance(Rng& rng, long precision) {
    ChartPair out;
    out.planted = planted_pair(rng, {.max_multiplicity = 3, .max_degree = 8});
    const std::size_t n = out.planted.x.dimension();
    Vector a(n);
    for (auto& v : a) v = Cyclotomic(uniform(rng, -2, 2));
    a[0] = Cyclotomic(uniform(rng, 1, 3));

    auto moved = [&](Branch b) {
        for (std::size_t i = 0; i < n; ++i) b.coords[i] = b.coords[i] + Series::constant(a[i]);
        b.base_point = a;
        return b;
    };
    const Branch x = moved(out.planted.x);
    const Branch y = moved(out.planted.y);
    const auto p = relcone::ProjectivePoint::from_affine(a, 0);
    out.chart0 = relcone::CurveData{relcone::JoinMode::XY, n, {relcone::PointData{p, 0, {x}, {y}}}};
    out.chart1 = relcone::CurveData{
        relcone::JoinMode::XY,
        n,
        {relcone::PointData{p, 1, {relcone::change_chart(x, 1, precision)}, {relcone::change_chart(y, 1, precision)}}}};
    return out;
}

}  // namespace testing_support
