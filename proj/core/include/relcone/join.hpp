#pragma once

#include <string>
#include <vector>

#include "relcone/branch.hpp"
#include "relcone/cone.hpp"
#include "relcone/linalg.hpp"

namespace relcone {

/// Point of P^n with homogeneous coordinates scaled so the first nonzero
/// entry is 1.
class ProjectivePoint {
public:
    ProjectivePoint() = default;
    explicit ProjectivePoint(Vector homogeneous);

    static ProjectivePoint from_affine(const Vector& affine, long chart);

    const Vector& coords() const noexcept { return coords_; }
    /// n for a point of P^n.
    std::size_t dimension() const noexcept { return coords_.empty() ? 0 : coords_.size() - 1; }
    /// Affine coordinates in chart `chart`; throws if the point is at infinity there.
    Vector affine(long chart) const;

    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

private:
    Vector coords_;
};

/// Affine direction as a point at infinity of the chart.
Vector homogenize_direction(const Vector& direction, long chart);

/// "(i)", "(ii)(1)" or "(ii)(2)".
std::string case_tag(PairCase c);

/// Projective line or plane through a vertex P.
struct ProjectiveConeComponent {
    ProjectivePoint vertex;
    Matrix span;                          // reduced echelon basis in C^{n+1}
    std::vector<ProjectivePoint> points;  // canonical completion of the vertex to a spanning set
    PairCase pair_case = PairCase::SharedTangent;
    bool up_to_precision = false;

    /// 1 for a line, 2 for a plane.
    std::size_t projective_dim() const noexcept { return span.empty() ? 0 : span.size() - 1; }
    /// Vertex and span; the case tag can depend on how precisely the germs are known.
    bool same_geometry(const ProjectiveConeComponent& other) const;
};

std::vector<ProjectiveConeComponent> lift_cone(const ProjectivePoint& p, long chart, const LinearCone& cone);

enum class JoinMode { XY, XX };

struct PointData {
    ProjectivePoint point;
    long chart = 0;
    std::vector<Branch> xs;
    std::vector<Branch> ys;  // ignored in XX mode
};

struct CurveData {
    JoinMode mode = JoinMode::XY;
    std::size_t n = 0;
    std::vector<PointData> points;
};

struct PointReport {
    ProjectivePoint point;
    std::vector<ProjectiveConeComponent> components;
};

/// Per-point cones plus the two families that are reported only
/// symbolically: the closure of honest secants (always part of the join) and,
/// for X == Y, the union of tangent lines at nonsingular points.
struct JoinReport {
    JoinMode mode = JoinMode::XY;
    std::vector<PointReport> points;
    bool has_j0_marker = true;
    bool tangent_family_marker = false;
    std::vector<std::string> warnings;
};

JoinReport join_report(const CurveData& data, const ConeOptions& options = {});

/// The C(n+1, 2) minors P_i Q_j - P_j Q_i (i < j, lexicographic), scaled so the
/// first nonzero entry is 1.
Vector plucker_line(const ProjectivePoint& p, const ProjectivePoint& q);

/// The same germ written in another affine chart. Division by the new chart
/// coordinate makes the result a truncated series below `precision`.
Branch change_chart(const Branch& b, long new_chart, long precision = Series::kDefaultPrecision);

}  // namespace relcone
