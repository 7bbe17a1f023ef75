#pragma once

#include <string>
#include <variant>
#include <vector>

#include "relcone/linalg.hpp"
#include "relcone/series.hpp"

namespace relcone {

/// A local parametrization t -> (x_1(t), ..., x_n(t)) of a curve germ at a
/// point P, written in one affine chart of projective space.
///
/// `coords` are the full affine coordinates: coords[i](0) must equal
/// base_point[i]. Operations below work on the translated germ
/// coords - base_point, which passes through the origin.
struct Branch {
    std::string label;
    long chart = 0;
    Vector base_point;
    std::vector<Series> coords;

    std::size_t dimension() const noexcept { return coords.size(); }
    bool exact() const;
};

/// Convenience constructor for a germ already centred at the origin.
Branch make_branch(std::string label, std::vector<Series> coords, long chart = 0);

/// coords - base_point, after checking that the germ passes through P and
/// is not constant. Throws InvalidBranch otherwise.
std::vector<Series> local_coords(const Branch& b);

/// ord of the parametrization: the multiplicity of the germ.
long degree(const Branch& b);

/// Coefficients of t^degree, a nonzero vector spanning the tangent line.
Vector tangent_direction(const Branch& b);

/// Branch in the form (t^k, phi_2, ..., phi_n) with ord phi_i > k.
///
/// The linear map and parameter change that produced it satisfy
///   linear * local(t) == coords(parameter(t)).
struct StandardBranch {
    std::string label;
    long k = 1;
    std::vector<Series> coords;
    Matrix linear;
    Matrix linear_inverse;
    Series parameter;
};

/// Throws std::logic_error if the standard-form invariants fail.
void check_standard(const StandardBranch& s);

/// Rebuilds the translated input germ from a standard branch; agrees with
/// local_coords(input) below the returned truncations.
std::vector<Series> reconstruct_local(const StandardBranch& s);

struct Transversal {
    Branch x, y;
    Vector tangent_x, tangent_y;
};

struct SharedTangent {
    StandardBranch x, y;
};

/// Both inputs are the same exact parametrization; one standard form serves
/// for both and the germs are certified equal.
struct CoincidentInfo {
    StandardBranch germ;
};

using NormalizedPair = std::variant<Transversal, SharedTangent, CoincidentInfo>;

struct NormalizeOptions {
    /// Order in t up to which the difference series of the cone formula must
    /// be known. 0 selects 4*k*l + 8.
    long target_order = 0;
};

/// Default target order for a pair of multiplicities k, l.
long default_target_order(long k, long l);

/// Precision in the standard parameter needed for a branch that will be
/// substituted with t -> t^other_degree.
long standard_precision(long target_order, long other_degree);

/// Maps a common tangent v to e_1 by pivoting on the largest-index nonzero
/// entry of v and completing with unit vectors.
Matrix tangent_frame(const Vector& tangent);

/// Brings a translated germ to standard form in the frame `linear`, whose
/// first row must send the germ's tangent to a multiple of e_1.
StandardBranch standardize(const std::string& label, const std::vector<Series>& local, const Matrix& linear,
                           const Matrix& linear_inverse, long precision);

NormalizedPair normalize_pair(const Branch& x, const Branch& y, const NormalizeOptions& options = {});

}  // namespace relcone
