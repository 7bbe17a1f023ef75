#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relcone/branch.hpp"
#include "relcone/linalg.hpp"

namespace relcone {

enum class PairCase {
    Transversal,       // tangent lines meet only at the origin
    SharedTangent,     // common tangent, at least one germ singular or germs distinct
    CoincidentSmooth,  // certified equal smooth germs; the cone is the tangent line
};

std::string to_string(PairCase c);

/// Where a cone subspace came from.
struct Provenance {
    PairCase pair_case = PairCase::Transversal;
    std::string x_label;
    std::string y_label;
    // Shared-tangent data: epsilon = zeta_l^i, the order n_i of the
    // difference series and its leading vector v_i (original coordinates).
    long root_order = 0;
    long root_index = 0;
    long n_i = 0;
    Vector v_i;
    // Difference series identically zero (exactly certified, or only up to
    // the working precision when up_to_precision is set).
    bool coincident = false;
    bool up_to_precision = false;

    /// "zL^i" or empty for transversal pairs.
    std::string epsilon() const;
};

/// Linear subspace through the origin given by a reduced row-echelon basis.
struct Subspace {
    Matrix basis;
    Provenance provenance;

    std::size_t dim() const noexcept { return basis.size(); }
};

/// Finite union of lines and planes through the origin. Subspaces are kept in
/// canonical form: reduced echelon bases, no subspace contained in another,
/// sorted by (dimension, basis).
class LinearCone {
public:
    LinearCone() = default;
    explicit LinearCone(std::size_t ambient) : ambient_(ambient) {}

    std::size_t ambient() const noexcept { return ambient_; }
    const std::vector<Subspace>& subspaces() const noexcept { return subspaces_; }
    bool empty() const noexcept { return subspaces_.empty(); }

    /// Adds span(vectors). Duplicates keep the provenance inserted first.
    void insert(const Matrix& vectors, Provenance provenance);
    void merge(const LinearCone& other);

    std::size_t plane_count() const;
    std::size_t line_count() const;

    /// Compares the subspace sets, ignoring provenance.
    bool same_subspaces(const LinearCone& other) const;

private:
    std::size_t ambient_ = 0;
    std::vector<Subspace> subspaces_;
};

/// v lies in some subspace of c. The zero vector is always a member.
bool cone_membership(const Vector& v, const LinearCone& c);

/// Image of every subspace under an invertible linear map.
LinearCone map_cone(const Matrix& linear, const LinearCone& c);

enum class UnresolvedPolicy {
    Error,            // throw PrecisionExhausted
    AssumeCoincident  // contribute the tangent line and flag it
};

struct ConeOptions {
    /// Order to which each difference series must be known; 0 picks 4kl+8
    /// and raises it on demand up to `max_order`.
    long target_order = 0;
    /// 0: one doubling of the starting order.
    long max_order = 0;
    /// Never raise the target order (set by explicit truncation overrides).
    bool fixed_order = false;
    /// What to do for exact inputs whose difference series stay zero up to
    /// max_order. Truncated inputs always raise PrecisionExhausted.
    UnresolvedPolicy unresolved = UnresolvedPolicy::AssumeCoincident;
};

struct PairCone {
    LinearCone cone;
    PairCase pair_case = PairCase::Transversal;
    std::vector<std::string> warnings;
};

PairCone cone_pair_detailed(const Branch& x, const Branch& y, const ConeOptions& options = {});
LinearCone cone_pair(const Branch& x, const Branch& y, const ConeOptions& options = {});

struct SetCone {
    LinearCone cone;
    std::vector<PairCone> pairs;  // row-major over (xs, ys)
    std::vector<std::string> warnings;
};

SetCone cone_sets_detailed(const std::vector<Branch>& xs, const std::vector<Branch>& ys,
                           const ConeOptions& options = {});
LinearCone cone_sets(const std::vector<Branch>& xs, const std::vector<Branch>& ys, const ConeOptions& options = {});

}  // namespace relcone
