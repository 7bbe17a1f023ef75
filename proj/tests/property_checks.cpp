#include "property_checks.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "relcone/errors.hpp"
#include "relcone/linalg.hpp"

namespace testing_support {

using relcone::cone_pair;
using relcone::LinearCone;
using relcone::Series;

namespace {

std::string cone_text(const LinearCone& c) {
    std::ostringstream out;
    for (const auto& s : c.subspaces()) {
        out << "{";
        for (const auto& row : s.basis) out << relcone::to_string(row);
        out << "}";
    }
    return out.str();
}

std::string mismatch(const std::string& what, const Planted& p, const LinearCone& got, const LinearCone& want) {
    return what + ": got " + cone_text(got) + " want " + cone_text(want) + "\n  " + describe(p);
}

bool contains_vector(const relcone::Subspace& s, const Vector& v) {
    Matrix rows = s.basis;
    rows.push_back(v);
    return relcone::rank(rows) == s.dim();
}

}  // namespace

Branch map_branch(const Matrix& m, const Branch& b) {
    Branch out = b;
    for (std::size_t i = 0; i < m.size(); ++i) {
        Series acc;
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            if (!m[i][j].is_zero()) acc = acc + b.coords[j].scaled(m[i][j]);
        }
        out.coords[i] = acc;
    }
    out.base_point = m * b.base_point;
    return out;
}

Branch rescale_parameter(const Branch& b, const Cyclotomic& mu) {
    Branch out = b;
    for (auto& c : out.coords) c = relcone::substitute(c, mu, 1);
    return out;
}

const std::vector<Matrix>& frame_pool(std::size_t n) {
    static std::map<std::size_t, std::vector<Matrix>> pools;
    auto& pool = pools[n];
    if (pool.empty()) {
        Rng rng(1000 + n);
        while (pool.size() < 20) {
            Matrix m = random_invertible(rng, n);
            if (std::find(pool.begin(), pool.end(), m) == pool.end()) pool.push_back(std::move(m));
        }
    }
    return pool;
}

std::optional<std::string> check_against_oracle(const Planted& p) {
    const LinearCone got = cone_pair(p.x, p.y);
    if (!got.same_subspaces(p.expected)) return mismatch("oracle", p, got, p.expected);
    return std::nullopt;
}

std::optional<std::string> check_symmetry(const Planted& p) {
    const LinearCone a = cone_pair(p.x, p.y);
    const LinearCone b = cone_pair(p.y, p.x);
    if (!a.same_subspaces(b)) return mismatch("symmetry", p, b, a);
    return std::nullopt;
}

std::optional<std::string> check_structure(const Planted& p) {
    const auto pc = relcone::cone_pair_detailed(p.x, p.y);
    const LinearCone& c = pc.cone;
    const Vector tx = relcone::tangent_direction(p.x);
    const Vector ty = relcone::tangent_direction(p.y);
    for (const auto& s : c.subspaces()) {
        if (s.dim() > 2) return "subspace of dimension " + std::to_string(s.dim()) + "\n  " + describe(p);
    }
    if (c.plane_count() > static_cast<std::size_t>(std::min(p.k, p.l))) {
        return "plane count " + std::to_string(c.plane_count()) + " above min(k, l)\n  " + describe(p);
    }
    if (!relcone::cone_membership(tx, c) || !relcone::cone_membership(ty, c)) {
        return "a tangent is missing from the cone\n  " + describe(p);
    }
    if (pc.pair_case == relcone::PairCase::Transversal) {
        if (c.subspaces().size() != 1 || c.plane_count() != 1) return "transversal cone is not one plane\n  " + describe(p);
    } else {
        for (const auto& s : c.subspaces()) {
            if (!contains_vector(s, tx)) return "subspace misses the common tangent\n  " + describe(p);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_mu_invariance(const Planted& p) {
    const LinearCone base = cone_pair(p.x, p.y);
    const long order = p.k * p.l;
    for (long j = 0; j < order; ++j) {
        const Cyclotomic mu = Cyclotomic::root_of_unity(order, j);
        const LinearCone moved = cone_pair(rescale_parameter(p.x, mu), p.y);
        if (!moved.same_subspaces(base)) return mismatch("mu = " + mu.str(), p, moved, base);
    }
    return std::nullopt;
}

std::optional<std::string> check_frame_equivariance(const Planted& p, Rng& rng) {
    const auto& pool = frame_pool(p.x.dimension());
    const Matrix& m = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool.size()) - 1))];
    const LinearCone base = cone_pair(p.x, p.y);
    const LinearCone moved = cone_pair(map_branch(m, p.x), map_branch(m, p.y));
    const LinearCone want = image_cone(m, base);
    if (!moved.same_subspaces(want)) return mismatch("frame equivariance", p, moved, want);
    return std::nullopt;
}

std::optional<std::string> check_union(const Planted& a, const Planted& b, Rng& rng) {
    std::vector<Branch> all{a.x, a.y, b.x, b.y};
    all[0].label = "X1";
    all[1].label = "Y1";
    all[2].label = "X2";
    all[3].label = "Y2";
    std::shuffle(all.begin(), all.end(), rng);
    const std::vector<Branch> xs{all[0], all[1]};
    const std::vector<Branch> ys{all[2], all[3]};

    LinearCone want;
    bool pair_needs_extension = false;
    for (const auto& x : xs) {
        for (const auto& y : ys) {
            try {
                want.merge(cone_pair(x, y));
            } catch (const relcone::FieldExtensionRequired&) {
                pair_needs_extension = true;
            }
        }
    }
    try {
        const LinearCone got = relcone::cone_sets(xs, ys);
        if (pair_needs_extension) return "cone_sets succeeded although a pair needs a field extension";
        if (!got.same_subspaces(want)) {
            return "union: got " + cone_text(got) + " want " + cone_text(want) + "\n  " + describe(a) + "\n  " +
                   describe(b);
        }
    } catch (const relcone::FieldExtensionRequired&) {
        if (!pair_needs_extension) return "cone_sets needs a field extension but no pair does";
    }
    return std::nullopt;
}

SuiteResult run_property_suite(std::size_t count, std::uint64_t seed) {
    // Rescaling by a root of unity of order kl can push the field past the
    // default conductor limit.
    struct Limit {
        long saved = relcone::max_conductor();
        Limit() { relcone::set_max_conductor(5000); }
        ~Limit() { relcone::set_max_conductor(saved); }
    } limit;
    Rng rng(seed);
    SuiteResult result;
    std::vector<Planted> previous_by_dim(4);
    std::vector<bool> have(4, false);
    auto record = [&](const std::optional<std::string>& r) {
        if (r) result.failures.push_back(*r);
    };
    for (std::size_t i = 0; i < count; ++i) {
        Planted p = planted_pair(rng);
        ++result.instances;
        try {
            record(check_against_oracle(p));
            record(check_symmetry(p));
            record(check_structure(p));
            record(check_mu_invariance(p));
            record(check_frame_equivariance(p, rng));
            const std::size_t n = p.x.dimension();
            if (have[n]) record(check_union(previous_by_dim[n], p, rng));
            previous_by_dim[n] = p;
            have[n] = true;
        } catch (const std::exception& e) {
            result.failures.push_back(std::string("exception: ") + e.what() + "\n  " + describe(p));
        }
    }
    return result;
}

}  // namespace testing_support
