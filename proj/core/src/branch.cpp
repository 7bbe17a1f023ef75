#include "relcone/branch.hpp"

#include <stdexcept>

#include "relcone/errors.hpp"

namespace relcone {

namespace {

// Multiplicity of a translated germ. A coordinate that is zero only up to its
// truncation could still start below the other coordinates, which leaves the
// degree undetermined.
long local_degree(const std::vector<Series>& local, const std::string& label) {
    long best = -1;
    for (const auto& s : local) {
        const Order o = ord(s);
        if (o.finite() && (best < 0 || o.value < best)) best = o.value;
    }
    for (const auto& s : local) {
        const Order o = ord(s);
        if (o.kind == Order::Kind::ZeroTruncated && (best < 0 || o.value <= best)) {
            throw PrecisionExhausted("branch '" + label + "': degree not determined below truncation order " +
                                     std::to_string(o.value));
        }
    }
    if (best < 0) throw InvalidBranch("branch '" + label + "' is constant");
    return best;
}

std::vector<Series> apply_matrix(const Matrix& m, const std::vector<Series>& v) {
    std::vector<Series> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        Series acc;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!row[j].is_zero()) acc = acc + v[j].scaled(row[j]);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

}  // namespace

bool Branch::exact() const {
    for (const auto& c : coords) {
        if (!c.exact()) return false;
    }
    return true;
}

Branch make_branch(std::string label, std::vector<Series> coords, long chart) {
    Branch b;
    b.label = std::move(label);
    b.chart = chart;
    b.base_point = Vector(coords.size());
    b.coords = std::move(coords);
    return b;
}

std::vector<Series> local_coords(const Branch& b) {
    if (b.coords.size() < 2) throw InvalidBranch("branch '" + b.label + "' needs at least two coordinates");
    if (b.base_point.size() != b.coords.size()) {
        throw InvalidBranch("branch '" + b.label + "': base point and coordinates differ in dimension");
    }
    std::vector<Series> out;
    out.reserve(b.coords.size());
    for (std::size_t i = 0; i < b.coords.size(); ++i) {
        const Series& c = b.coords[i];
        if (!c.known(0)) {
            throw PrecisionExhausted("branch '" + b.label + "': constant term of coordinate " + std::to_string(i) +
                                     " unknown");
        }
        if (c.coefficient(0) != b.base_point[i]) {
            throw InvalidBranch("branch '" + b.label + "' does not pass through its base point in coordinate " +
                                std::to_string(i));
        }
        out.push_back(c - Series::constant(b.base_point[i]));
    }
    return out;
}

long degree(const Branch& b) { return local_degree(local_coords(b), b.label); }

Vector tangent_direction(const Branch& b) {
    const auto local = local_coords(b);
    const long d = local_degree(local, b.label);
    Vector v;
    v.reserve(local.size());
    for (const auto& s : local) v.push_back(s.coefficient(d));
    return v;
}

void check_standard(const StandardBranch& s) {
    if (s.coords.empty() || !(s.coords[0] == Series::monomial(Cyclotomic(1), s.k))) {
        throw std::logic_error("standard branch '" + s.label + "': first coordinate is not t^k");
    }
    for (std::size_t i = 1; i < s.coords.size(); ++i) {
        const Order o = ord(s.coords[i]);
        const bool ok = (o.finite() && o.value > s.k) || o.kind == Order::Kind::ZeroExact ||
                        (o.kind == Order::Kind::ZeroTruncated && o.value > s.k);
        if (!ok) {
            throw std::logic_error("standard branch '" + s.label + "': coordinate " + std::to_string(i) +
                                   " has order <= k");
        }
    }
    if (s.linear * s.linear_inverse != identity(s.coords.size())) {
        throw std::logic_error("standard branch '" + s.label + "': frame is not invertible");
    }
}

std::vector<Series> reconstruct_local(const StandardBranch& s) {
    std::vector<Series> reparametrized;
    reparametrized.reserve(s.coords.size());
    for (const auto& c : s.coords) reparametrized.push_back(compose(c, s.parameter));
    return apply_matrix(s.linear_inverse, reparametrized);
}

long default_target_order(long k, long l) { return 4 * k * l + 8; }

long standard_precision(long target_order, long other_degree) {
    return (target_order + other_degree - 1) / other_degree + 1;
}

Matrix tangent_frame(const Vector& tangent) {
    const std::size_t n = tangent.size();
    std::size_t pivot = n;
    for (std::size_t i = n; i-- > 0;) {
        if (!tangent[i].is_zero()) {
            pivot = i;
            break;
        }
    }
    if (pivot == n) throw std::invalid_argument("zero tangent vector");
    // Columns: the tangent, then e_j for every j != pivot in increasing order.
    Matrix basis(n, Vector(n));
    for (std::size_t i = 0; i < n; ++i) basis[i][0] = tangent[i];
    std::size_t col = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == pivot) continue;
        basis[j][col++] = Cyclotomic(1);
    }
    auto inv = inverse(basis);
    if (!inv) throw std::logic_error("tangent frame completion is singular");
    return *inv;
}

StandardBranch standardize(const std::string& label, const std::vector<Series>& local, const Matrix& linear,
                           const Matrix& linear_inverse, long precision) {
    const std::vector<Series> mapped = apply_matrix(linear, local);
    const long k = local_degree(mapped, label);
    const Series& first = mapped[0];
    const Order first_order = ord(first);
    if (!first_order.finite() || first_order.value != k) {
        throw std::logic_error("branch '" + label + "': frame does not align the tangent with e_1");
    }
    const Cyclotomic lead = first.coefficient(k);
    const auto root = supported_kth_root(lead, k);
    if (!root) {
        throw FieldExtensionRequired("branch '" + label + "': leading coefficient " + lead.str() +
                                     " has no root of order " + std::to_string(k) +
                                     " of the form rational * root of unity");
    }

    StandardBranch out;
    out.label = label;
    out.k = k;
    out.linear = linear;
    out.linear_inverse = linear_inverse;

    const Series unit = first.shift(-k).scaled(lead.inverse());
    if (unit.exact() && unit == Series::constant(Cyclotomic(1))) {
        // First coordinate is exactly lead * t^k: a pure rescaling of t keeps
        // every coordinate exact.
        out.parameter = Series::monomial(*root, 1);
        const Cyclotomic inv = root->inverse();
        for (const auto& s : mapped) out.coords.push_back(substitute(s, inv, 1));
    } else {
        // lead * t^k * unit(t) = sigma(t)^k with sigma = root * t * unit^(1/k).
        const Series sigma = kth_root(unit, k, precision).shift(1).scaled(*root);
        const Series sigma_inverse = revert(sigma, precision);
        out.parameter = sigma;
        for (const auto& s : mapped) out.coords.push_back(compose(s, sigma_inverse));
    }

    const Series target = Series::monomial(Cyclotomic(1), k);
    const Series& computed = out.coords[0];
    if (!computed.exact() || !(computed == target)) {
        const long known = computed.exact() ? k + 1 : computed.trunc();
        if (known <= k) {
            throw PrecisionExhausted("branch '" + label + "': standard form not determined at order " +
                                     std::to_string(k));
        }
        if (!agree_below(computed, target, known)) {
            throw std::logic_error("branch '" + label + "': reparametrization did not produce t^k");
        }
    }
    out.coords[0] = target;
    check_standard(out);
    return out;
}

namespace {

long degree(const Series& s) { return s.terms().empty() ? -1 : s.terms().rbegin()->first; }

// True when ly(t) = lx(sigma(t)) exactly for some polynomial sigma. For
// polynomial germs such a sigma has to be a polynomial of degree
// deg ly / deg lx, so it is fixed by a few terms of the standard parameters
// and then checked by composing.
bool reparametrizes(const std::vector<Series>& lx, const std::vector<Series>& ly, const Matrix& linear, long k) {
    long d = 0;
    for (std::size_t j = 0; j < lx.size(); ++j) {
        const long dx = degree(lx[j]), dy = degree(ly[j]);
        if ((dx <= 0) != (dy <= 0)) return false;
        if (dx <= 0) continue;
        if (dy % dx != 0 || (d != 0 && dy / dx != d)) return false;
        d = dy / dx;
    }
    if (d < 1) return false;

    const long precision = d + 2;
    const Series f = apply_matrix(linear, lx)[0];
    const Series g = apply_matrix(linear, ly)[0];
    const Cyclotomic a = f.coefficient(k), b = g.coefficient(k);
    const auto c = supported_kth_root(b / a, k);
    if (!c) return false;
    // f = a h_f^k and g = b h_g^k, so h_f(sigma) = c zeta h_g with zeta^k = 1.
    const Series hf = kth_root(f.shift(-k).scaled(a.inverse()), k, precision).shift(1);
    const Series hg = kth_root(g.shift(-k).scaled(b.inverse()), k, precision).shift(1);
    const Series hf_inverse = revert(hf, precision);
    for (long j = 0; j < k; ++j) {
        const Series sigma = compose(hf_inverse, hg.scaled(*c * Cyclotomic::root_of_unity(k, j)));
        if (!sigma.known(d + 1) || !sigma.coefficient(d + 1).is_zero()) continue;
        Series::Terms poly;
        for (const auto& [e, v] : sigma.terms()) {
            if (e <= d) poly.emplace(e, v);
        }
        const Series candidate = Series::exact(std::move(poly));
        bool all = true;
        for (std::size_t i = 0; i < lx.size() && all; ++i) all = compose(lx[i], candidate) == ly[i];
        if (all) return true;
    }
    return false;
}

}  // namespace

NormalizedPair normalize_pair(const Branch& x, const Branch& y, const NormalizeOptions& options) {
    if (x.dimension() != y.dimension()) {
        throw InvalidBranch("branches '" + x.label + "' and '" + y.label + "' live in different dimensions");
    }
    if (x.chart != y.chart) {
        throw InconsistentChart("branches '" + x.label + "' and '" + y.label + "' use different charts");
    }
    if (x.base_point != y.base_point) {
        throw InvalidBranch("branches '" + x.label + "' and '" + y.label + "' have different base points");
    }
    const auto lx = local_coords(x);
    const auto ly = local_coords(y);
    const long k = local_degree(lx, x.label);
    const long l = local_degree(ly, y.label);
    const Vector tx = tangent_direction(x);
    const Vector ty = tangent_direction(y);

    if (rank(Matrix{tx, ty}) == 2) return Transversal{x, y, tx, ty};

    const long target = options.target_order > 0 ? options.target_order : default_target_order(k, l);
    Matrix linear = tangent_frame(tx);
    // In this frame x leads with 1 and y with rho. Scaling the first row by
    // rho^m gives leads rho^m and rho^(m+1); pick the smallest |m| for which
    // both roots exist, so the outcome does not depend on argument order.
    const Cyclotomic rho = (linear * ty)[0];
    const long period = k * l;
    for (long step = 0; step <= 2 * period; ++step) {
        const long m = step % 2 == 0 ? -(step / 2) : (step + 1) / 2;
        const Cyclotomic c = rho.pow(m);
        if (supported_kth_root(c, k) && supported_kth_root(c * rho, l)) {
            for (auto& entry : linear[0]) entry *= c;
            break;
        }
    }
    const Matrix linear_inverse = *inverse(linear);

    if (x.exact() && y.exact() && k == l && (lx == ly || reparametrizes(lx, ly, linear, k))) {
        return CoincidentInfo{standardize(x.label, lx, linear, linear_inverse, standard_precision(target, k))};
    }
    return SharedTangent{standardize(x.label, lx, linear, linear_inverse, standard_precision(target, l)),
                         standardize(y.label, ly, linear, linear_inverse, standard_precision(target, k))};
}

}  // namespace relcone
