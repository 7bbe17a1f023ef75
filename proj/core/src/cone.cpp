#include "relcone/cone.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "relcone/errors.hpp"

namespace relcone {

namespace {

// A difference series whose order cannot be decided from the known terms.
struct Unresolved {
    std::string what;
    long known = -1;  // all differences vanish below this order; -1 otherwise
};

bool contains(const Matrix& basis, const Matrix& candidate) {
    Matrix rows = basis;
    rows.insert(rows.end(), candidate.begin(), candidate.end());
    return rank(rows) == basis.size();
}

std::string pair_name(const Branch& x, const Branch& y) { return "pair ('" + x.label + "', '" + y.label + "')"; }

PairCone transversal_cone(const Transversal& t) {
    PairCone out{LinearCone(t.tangent_x.size()), PairCase::Transversal, {}};
    Provenance p;
    p.pair_case = PairCase::Transversal;
    p.x_label = t.x.label;
    p.y_label = t.y.label;
    out.cone.insert({t.tangent_x, t.tangent_y}, p);
    return out;
}

// Relative tangent cone of two standard branches sharing the frame. `big`
// has the larger multiplicity k, `small` has l <= k. For each l-th root of
// unity eps the difference D(t) = big(t^l) - small(eps t^k) has first
// coordinate zero; its leading vector v spans, together with e_1, one plane
// of the cone. D == 0 contributes the line through e_1.
PairCone shared_tangent_cone(const StandardBranch& big, const StandardBranch& small, bool same_germ,
                             const std::string& x_label, const std::string& y_label, long assume_from) {
    const long k = big.k;
    const long l = small.k;
    const std::size_t n = big.coords.size();
    const Matrix& back = big.linear_inverse;
    const Vector tangent = back * unit_vector(n, 0);

    PairCone out{LinearCone(n), PairCase::SharedTangent, {}};
    bool all_zero = true;
    for (long i = 1; i <= l; ++i) {
        const Cyclotomic eps = Cyclotomic::root_of_unity(l, i);
        Provenance p;
        p.pair_case = PairCase::SharedTangent;
        p.x_label = x_label;
        p.y_label = y_label;
        p.root_order = l;
        p.root_index = i;

        std::vector<Series> diff;
        diff.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            diff.push_back(substitute(big.coords[j], Cyclotomic(1), l) - substitute(small.coords[j], eps, k));
        }

        long order = -1;
        for (const auto& d : diff) {
            const Order o = ord(d);
            if (o.finite() && (order < 0 || o.value < order)) order = o.value;
        }
        bool zero = false;
        if (order < 0) {
            const bool certified =
                (same_germ && i == l) || std::all_of(diff.begin(), diff.end(), [](const Series& d) { return d.exact(); });
            long known = Series::kExactTrunc;
            for (const auto& d : diff) known = std::min(known, d.trunc());
            if (certified) {
                zero = true;
            } else if (known >= assume_from) {
                zero = true;
                p.up_to_precision = true;
                out.warnings.push_back("CoincidentUpToPrecision: pair ('" + x_label + "', '" + y_label +
                                       "') difference for epsilon " + p.epsilon() + " vanishes below order " +
                                       std::to_string(known));
            } else {
                throw Unresolved{"difference for epsilon " + p.epsilon() + " is zero below its truncation order",
                                 known};
            }
        } else {
            for (const auto& d : diff) {
                if (!d.known(order)) {
                    throw Unresolved{"difference for epsilon " + p.epsilon() + " not known at order " +
                                     std::to_string(order)};
                }
            }
        }

        if (zero) {
            p.coincident = true;
            out.cone.insert({tangent}, p);
            continue;
        }
        all_zero = false;
        Vector v;
        v.reserve(n);
        for (const auto& d : diff) v.push_back(d.coefficient(order));
        p.n_i = order;
        p.v_i = back * v;
        out.cone.insert({tangent, p.v_i}, p);
    }
    if (all_zero) {
        bool certified = true;
        for (const auto& s : out.cone.subspaces()) certified = certified && !s.provenance.up_to_precision;
        if (certified && k == 1 && l == 1) {
            out.pair_case = PairCase::CoincidentSmooth;
            LinearCone relabelled(out.cone.ambient());
            for (const auto& s : out.cone.subspaces()) {
                Provenance q = s.provenance;
                q.pair_case = PairCase::CoincidentSmooth;
                relabelled.insert(s.basis, q);
            }
            out.cone = std::move(relabelled);
        } else if (certified) {
            out.warnings.push_back("pair ('" + x_label + "', '" + y_label +
                                   "'): every difference vanishes; the parametrizations are not injective");
        }
    }
    return out;
}

// Vanishing differences known at least to `assume_from` count as zero.
PairCone evaluate(const NormalizedPair& np, const Branch& x, const Branch& y, long assume_from) {
    if (const auto* t = std::get_if<Transversal>(&np)) return transversal_cone(*t);
    if (const auto* c = std::get_if<CoincidentInfo>(&np)) {
        return shared_tangent_cone(c->germ, c->germ, true, x.label, y.label, assume_from);
    }
    const auto& s = std::get<SharedTangent>(np);
    // The formula wants l <= k; the cone is symmetric in the two germs.
    if (s.y.k > s.x.k) return shared_tangent_cone(s.y, s.x, false, x.label, y.label, assume_from);
    return shared_tangent_cone(s.x, s.y, false, x.label, y.label, assume_from);
}

}  // namespace

std::string to_string(PairCase c) {
    switch (c) {
        case PairCase::Transversal: return "transversal";
        case PairCase::SharedTangent: return "shared_tangent";
        case PairCase::CoincidentSmooth: return "coincident_smooth";
    }
    return "unknown";
}

std::string Provenance::epsilon() const {
    if (root_order == 0) return {};
    return "z" + std::to_string(root_order) + "^" + std::to_string(root_index);
}

void LinearCone::insert(const Matrix& vectors, Provenance provenance) {
    for (const auto& v : vectors) {
        if (ambient_ == 0) ambient_ = v.size();
        if (v.size() != ambient_) throw std::invalid_argument("cone vector has the wrong dimension");
    }
    Matrix basis = rref(vectors);
    if (basis.empty()) return;
    if (basis.size() > 2) throw std::logic_error("cone subspaces have dimension at most 2");
    for (const auto& s : subspaces_) {
        if (s.dim() >= basis.size() && contains(s.basis, basis)) return;
    }
    std::erase_if(subspaces_, [&](const Subspace& s) { return s.dim() < basis.size() && contains(basis, s.basis); });
    Subspace added{std::move(basis), std::move(provenance)};
    auto pos = std::lower_bound(subspaces_.begin(), subspaces_.end(), added, [](const Subspace& a, const Subspace& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        return a.basis < b.basis;
    });
    subspaces_.insert(pos, std::move(added));
}

void LinearCone::merge(const LinearCone& other) {
    for (const auto& s : other.subspaces_) insert(s.basis, s.provenance);
}

std::size_t LinearCone::plane_count() const {
    return static_cast<std::size_t>(std::count_if(subspaces_.begin(), subspaces_.end(),
                                                  [](const Subspace& s) { return s.dim() == 2; }));
}

std::size_t LinearCone::line_count() const { return subspaces_.size() - plane_count(); }

bool LinearCone::same_subspaces(const LinearCone& other) const {
    if (subspaces_.size() != other.subspaces_.size()) return false;
    for (std::size_t i = 0; i < subspaces_.size(); ++i) {
        if (subspaces_[i].basis != other.subspaces_[i].basis) return false;
    }
    return true;
}

bool cone_membership(const Vector& v, const LinearCone& c) {
    if (is_zero(v)) return true;
    for (const auto& s : c.subspaces()) {
        if (contains(s.basis, {v})) return true;
    }
    return false;
}

LinearCone map_cone(const Matrix& linear, const LinearCone& c) {
    LinearCone out(c.ambient());
    for (const auto& s : c.subspaces()) {
        Matrix image;
        for (const auto& row : s.basis) image.push_back(linear * row);
        Provenance p = s.provenance;
        if (!p.v_i.empty()) p.v_i = linear * p.v_i;
        out.insert(image, std::move(p));
    }
    return out;
}

PairCone cone_pair_detailed(const Branch& x, const Branch& y, const ConeOptions& options) {
    const bool inputs_exact = x.exact() && y.exact();
    long target = options.target_order;
    if (target <= 0) {
        try {
            target = default_target_order(degree(x), degree(y));
        } catch (const PrecisionExhausted& e) {
            throw PrecisionExhausted(pair_name(x, y) + ": " + e.what());
        }
    }
    const long ceiling = options.max_order > 0 ? std::max(options.max_order, target) : 2 * target;
    const bool can_raise = inputs_exact && !options.fixed_order;
    auto settle = [&](const NormalizedPair& np, long assume_from) {
        try {
            return evaluate(np, x, y, assume_from);
        } catch (const Unresolved& u) {
            throw PrecisionExhausted(pair_name(x, y) + ": " + u.what + " (truncation order too low)");
        }
    };
    while (true) {
        std::optional<Unresolved> unresolved;
        std::optional<NormalizedPair> np;
        try {
            np = normalize_pair(x, y, NormalizeOptions{target});
            return evaluate(*np, x, y, Series::kExactTrunc);
        } catch (const Unresolved& u) {
            unresolved = u;
        } catch (const PrecisionExhausted& e) {
            if (can_raise && target < ceiling) {
                target = std::min(2 * target, ceiling);
                continue;
            }
            throw PrecisionExhausted(pair_name(x, y) + ": " + e.what());
        } catch (const FieldExtensionRequired& e) {
            throw FieldExtensionRequired(pair_name(x, y) + ": " + e.what());
        }

        if (!can_raise) {
            // Truncated data that vanishes through the target order is
            // reported as coincident up to precision; anything shorter is starved.
            if (unresolved->known < target || options.unresolved == UnresolvedPolicy::Error) {
                throw PrecisionExhausted(pair_name(x, y) + ": " + unresolved->what + " (truncation order too low)");
            }
            return settle(*np, target);
        }
        if (target < ceiling) {
            target = std::min(2 * target, ceiling);
            continue;
        }
        if (options.unresolved == UnresolvedPolicy::Error) {
            throw PrecisionExhausted(pair_name(x, y) + ": " + unresolved->what + " up to order " +
                                     std::to_string(target));
        }
        return settle(*np, 0);
    }
}

LinearCone cone_pair(const Branch& x, const Branch& y, const ConeOptions& options) {
    return cone_pair_detailed(x, y, options).cone;
}

SetCone cone_sets_detailed(const std::vector<Branch>& xs, const std::vector<Branch>& ys, const ConeOptions& options) {
    SetCone out;
    for (const auto& x : xs) {
        for (const auto& y : ys) {
            PairCone pc = cone_pair_detailed(x, y, options);
            if (out.cone.ambient() == 0) out.cone = LinearCone(pc.cone.ambient());
            out.cone.merge(pc.cone);
            out.warnings.insert(out.warnings.end(), pc.warnings.begin(), pc.warnings.end());
            out.pairs.push_back(std::move(pc));
        }
    }
    return out;
}

LinearCone cone_sets(const std::vector<Branch>& xs, const std::vector<Branch>& ys, const ConeOptions& options) {
    return cone_sets_detailed(xs, ys, options).cone;
}

}  // namespace relcone
