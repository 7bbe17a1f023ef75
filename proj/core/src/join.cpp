#include "relcone/join.hpp"

#include <stdexcept>

#include "relcone/errors.hpp"

namespace relcone {

namespace {

void check_chart(long chart, std::size_t n) {
    if (chart < 0 || static_cast<std::size_t>(chart) > n) {
        throw InconsistentChart("chart index " + std::to_string(chart) + " outside 0.." + std::to_string(n));
    }
}

}  // namespace

ProjectivePoint::ProjectivePoint(Vector homogeneous) {
    if (homogeneous.size() < 2) throw std::invalid_argument("projective points need at least two coordinates");
    if (is_zero(homogeneous)) throw std::invalid_argument("all homogeneous coordinates are zero");
    coords_ = normalized_leading_one(std::move(homogeneous));
}

ProjectivePoint ProjectivePoint::from_affine(const Vector& affine, long chart) {
    check_chart(chart, affine.size());
    Vector h;
    h.reserve(affine.size() + 1);
    for (std::size_t i = 0, a = 0; i <= affine.size(); ++i) {
        h.push_back(static_cast<long>(i) == chart ? Cyclotomic(1) : affine[a++]);
    }
    return ProjectivePoint(std::move(h));
}

Vector ProjectivePoint::affine(long chart) const {
    check_chart(chart, dimension());
    const Cyclotomic& w = coords_[chart];
    if (w.is_zero()) throw InvalidBranch("point lies at infinity of chart " + std::to_string(chart));
    const Cyclotomic inv = w.inverse();
    Vector out;
    out.reserve(dimension());
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (static_cast<long>(i) != chart) out.push_back(coords_[i] * inv);
    }
    return out;
}

Vector homogenize_direction(const Vector& direction, long chart) {
    check_chart(chart, direction.size());
    Vector h;
    h.reserve(direction.size() + 1);
    for (std::size_t i = 0, a = 0; i <= direction.size(); ++i) {
        h.push_back(static_cast<long>(i) == chart ? Cyclotomic{} : direction[a++]);
    }
    return h;
}

std::string case_tag(PairCase c) {
    switch (c) {
        case PairCase::CoincidentSmooth: return "(i)";
        case PairCase::Transversal: return "(ii)(1)";
        case PairCase::SharedTangent: return "(ii)(2)";
    }
    return "?";
}

bool ProjectiveConeComponent::same_geometry(const ProjectiveConeComponent& other) const {
    return vertex == other.vertex && span == other.span;
}

std::vector<ProjectiveConeComponent> lift_cone(const ProjectivePoint& p, long chart, const LinearCone& cone) {
    const Vector affine_p = p.affine(chart);
    if (!cone.empty() && cone.ambient() != affine_p.size()) {
        throw std::invalid_argument("cone and point live in different dimensions");
    }
    std::vector<ProjectiveConeComponent> out;
    for (const auto& s : cone.subspaces()) {
        Matrix rows{p.coords()};
        for (const auto& b : s.basis) rows.push_back(homogenize_direction(b, chart));
        ProjectiveConeComponent c;
        c.vertex = p;
        c.span = rref(rows);
        if (c.span.size() != s.dim() + 1) throw std::logic_error("lifted subspace lost a dimension");
        // Complete the vertex to a spanning set with rows of the echelon basis,
        // which depend only on the projective subspace.
        Matrix chosen{p.coords()};
        for (const auto& row : c.span) {
            Matrix trial = chosen;
            trial.push_back(row);
            if (rank(trial) == trial.size()) {
                chosen.push_back(row);
                c.points.emplace_back(row);
            }
        }
        c.pair_case = s.provenance.pair_case;
        c.up_to_precision = s.provenance.up_to_precision;
        out.push_back(std::move(c));
    }
    return out;
}

JoinReport join_report(const CurveData& data, const ConeOptions& options) {
    JoinReport report;
    report.mode = data.mode;
    report.tangent_family_marker = data.mode == JoinMode::XX;
    for (const auto& pd : data.points) {
        if (pd.point.dimension() != data.n) {
            throw InvalidBranch("point has " + std::to_string(pd.point.coords().size()) +
                                " homogeneous coordinates, expected " + std::to_string(data.n + 1));
        }
        const Vector affine = pd.point.affine(pd.chart);
        const std::vector<Branch>& ys = data.mode == JoinMode::XX && pd.ys.empty() ? pd.xs : pd.ys;
        for (const auto* list : {&pd.xs, &ys}) {
            for (const auto& b : *list) {
                if (b.chart != pd.chart) {
                    throw InconsistentChart("branch '" + b.label + "' uses chart " + std::to_string(b.chart) +
                                            " but its point uses chart " + std::to_string(pd.chart));
                }
                if (b.base_point != affine) {
                    throw InvalidBranch("branch '" + b.label + "' is not centred at its point");
                }
            }
        }
        SetCone sc = cone_sets_detailed(pd.xs, ys, options);
        report.warnings.insert(report.warnings.end(), sc.warnings.begin(), sc.warnings.end());
        report.points.push_back(PointReport{pd.point, lift_cone(pd.point, pd.chart, sc.cone)});
    }
    return report;
}

Vector plucker_line(const ProjectivePoint& p, const ProjectivePoint& q) {
    const Vector& a = p.coords();
    const Vector& b = q.coords();
    if (a.size() != b.size()) throw std::invalid_argument("points in different projective spaces");
    Vector minors;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) minors.push_back(a[i] * b[j] - a[j] * b[i]);
    }
    if (is_zero(minors)) throw EqualPoints();
    return normalized_leading_one(std::move(minors));
}

Branch change_chart(const Branch& b, long new_chart, long precision) {
    const std::size_t n = b.dimension();
    check_chart(b.chart, n);
    check_chart(new_chart, n);
    if (new_chart == b.chart) return b;

    std::vector<Series> homogeneous;
    for (std::size_t i = 0, a = 0; i <= n; ++i) {
        homogeneous.push_back(static_cast<long>(i) == b.chart ? Series::constant(Cyclotomic(1)) : b.coords.at(a++));
    }
    const Series& divisor = homogeneous[new_chart];
    if (!divisor.known(0) || divisor.coefficient(0).is_zero()) {
        throw InvalidBranch("branch '" + b.label + "' passes through infinity of chart " + std::to_string(new_chart));
    }
    const Series inv = reciprocal(divisor, precision);

    Branch out;
    out.label = b.label;
    out.chart = new_chart;
    out.base_point = ProjectivePoint::from_affine(b.base_point, b.chart).affine(new_chart);
    for (std::size_t i = 0; i <= n; ++i) {
        if (static_cast<long>(i) != new_chart) out.coords.push_back((homogeneous[i] * inv).truncate(precision));
    }
    return out;
}

}  // namespace relcone
