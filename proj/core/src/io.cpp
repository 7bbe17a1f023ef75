#include "relcone/io.hpp"

#include <cstdio>

#include "relcone/errors.hpp"

namespace relcone::io {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

Json matrix_to_json(const Matrix& m) {
    Json out = Json::array();
    for (const auto& row : m) out.push_back(to_json(row));
    return out;
}

std::vector<Branch> branches_from_json(const Json& j, long chart, const Vector& affine) {
    if (!j.is_array()) throw ParseError("branch list must be an array");
    std::vector<Branch> out;
    for (const auto& item : j) {
        Json filled = item;
        if (!filled.contains("chart")) filled["chart"] = chart;
        if (!filled.contains("point")) filled["point"] = to_json(affine);
        out.push_back(branch_from_json(filled));
    }
    return out;
}

}  // namespace

Cyclotomic number_from_json(const Json& j) {
    if (j.is_number_integer()) return Cyclotomic(j.get<long>());
    if (j.is_string()) return Cyclotomic::parse(j.get<std::string>());
    throw ParseError("expected an exact number as integer or string, got " + j.dump());
}

Json to_json(const Cyclotomic& c) { return c.str(); }

Vector vector_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of numbers, got " + j.dump());
    Vector v;
    for (const auto& x : j) v.push_back(number_from_json(x));
    return v;
}

Json to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

Branch branch_from_json(const Json& j) {
    Branch b;
    b.label = j.value("label", std::string("branch"));
    if (j.contains("chart")) {
        if (!j.at("chart").is_number_integer()) throw ParseError("branch '" + b.label + "': chart must be an integer");
        b.chart = j.at("chart").get<long>();
    }
    const bool exact = j.value("exact", true);
    std::optional<long> trunc;
    if (!exact) {
        if (!j.contains("trunc") || !j.at("trunc").is_number_integer()) {
            throw ParseError("branch '" + b.label + "': inexact branches need an integer 'trunc'");
        }
        trunc = j.at("trunc").get<long>();
        if (*trunc < 1) throw ParseError("branch '" + b.label + "': trunc must be positive");
    }
    const Json& coords = require(j, "coords");
    if (!coords.is_array()) throw ParseError("branch '" + b.label + "': coords must be an array");
    for (const auto& c : coords) {
        if (!c.is_string() && !c.is_number_integer()) {
            throw ParseError("branch '" + b.label + "': coordinates must be strings");
        }
        const std::string text = c.is_string() ? c.get<std::string>() : std::to_string(c.get<long>());
        b.coords.push_back(Series::parse(text, trunc));
    }
    b.base_point = j.contains("point") ? vector_from_json(j.at("point")) : Vector(b.coords.size());
    if (b.base_point.size() != b.coords.size()) {
        throw ParseError("branch '" + b.label + "': point and coords have different lengths");
    }
    if (b.coords.size() < 2) throw ParseError("branch '" + b.label + "': need at least two coordinates");
    return b;
}

Json to_json(const Branch& b) {
    Json out;
    out["label"] = b.label;
    out["chart"] = b.chart;
    out["point"] = to_json(b.base_point);
    Json coords = Json::array();
    long trunc = Series::kExactTrunc;
    for (const auto& c : b.coords) {
        coords.push_back(c.str());
        trunc = std::min(trunc, c.trunc());
    }
    out["coords"] = coords;
    out["exact"] = b.exact();
    if (!b.exact()) out["trunc"] = trunc;
    return out;
}

Branch with_truncation(Branch b, long trunc) {
    for (auto& c : b.coords) c = Series::truncated(c.terms(), std::min(trunc, c.trunc()));
    return b;
}

Json to_json(const Provenance& p) {
    Json out;
    out["case"] = to_string(p.pair_case);
    out["x"] = p.x_label;
    out["y"] = p.y_label;
    if (p.root_order > 0) {
        out["epsilon"] = p.epsilon();
        if (p.coincident) {
            out["coincident"] = true;
            out["n_i"] = 0;
        } else {
            out["n_i"] = p.n_i;
            out["v_i"] = to_json(p.v_i);
        }
        if (p.up_to_precision) out["up_to_precision"] = true;
    }
    return out;
}

Json to_json(const LinearCone& c) {
    Json subspaces = Json::array();
    for (const auto& s : c.subspaces()) {
        Json item;
        item["dim"] = s.dim();
        item["span"] = matrix_to_json(s.basis);
        item["provenance"] = to_json(s.provenance);
        subspaces.push_back(item);
    }
    Json out;
    out["ambient"] = c.ambient();
    out["subspaces"] = subspaces;
    return out;
}

LinearCone cone_from_json(const Json& j) {
    const Json& subspaces = require(j, "subspaces");
    if (!subspaces.is_array()) throw ParseError("'subspaces' must be an array");
    LinearCone cone;
    for (const auto& item : subspaces) {
        Matrix span;
        for (const auto& row : require(item, "span")) span.push_back(vector_from_json(row));
        if (span.empty() || span.size() > 2) throw ParseError("each subspace needs one or two spanning vectors");
        Provenance p;
        if (item.contains("provenance")) {
            const Json& pj = item.at("provenance");
            p.x_label = pj.value("x", std::string());
            p.y_label = pj.value("y", std::string());
            const std::string kind = pj.value("case", std::string("transversal"));
            p.pair_case = kind == "shared_tangent"      ? PairCase::SharedTangent
                          : kind == "coincident_smooth" ? PairCase::CoincidentSmooth
                                                        : PairCase::Transversal;
            if (pj.contains("epsilon")) {
                const std::string eps = pj.at("epsilon").get<std::string>();
                long order = 0, index = 0;
                char tail = 0;
                if (std::sscanf(eps.c_str(), "z%ld^%ld%c", &order, &index, &tail) != 2 || order < 1) {
                    throw ParseError("bad epsilon '" + eps + "'");
                }
                p.root_order = order;
                p.root_index = index;
            }
            p.n_i = pj.value("n_i", 0L);
            if (pj.contains("v_i")) p.v_i = vector_from_json(pj.at("v_i"));
            p.coincident = pj.value("coincident", false);
            p.up_to_precision = pj.value("up_to_precision", false);
        }
        if (rank(span) == 0) throw ParseError("subspace spanned by zero vectors");
        cone.insert(span, p);
    }
    return cone;
}

Json to_json(const StandardBranch& s) {
    Json out;
    out["label"] = s.label;
    out["k"] = s.k;
    Json coords = Json::array();
    for (const auto& c : s.coords) coords.push_back(c.str());
    out["coords"] = coords;
    long trunc = Series::kExactTrunc;
    for (const auto& c : s.coords) trunc = std::min(trunc, c.trunc());
    out["exact"] = trunc == Series::kExactTrunc;
    if (trunc != Series::kExactTrunc) out["trunc"] = trunc;
    out["frame"] = matrix_to_json(s.linear);
    out["parameter"] = s.parameter.str(true);
    return out;
}

Json to_json(const NormalizedPair& np) {
    Json out;
    if (const auto* t = std::get_if<Transversal>(&np)) {
        out["kind"] = "transversal";
        out["tangent_x"] = to_json(t->tangent_x);
        out["tangent_y"] = to_json(t->tangent_y);
    } else if (const auto* c = std::get_if<CoincidentInfo>(&np)) {
        out["kind"] = "coincident";
        out["standard"] = to_json(c->germ);
    } else {
        const auto& s = std::get<SharedTangent>(np);
        out["kind"] = "shared_tangent";
        out["x"] = to_json(s.x);
        out["y"] = to_json(s.y);
    }
    return out;
}

CurveData curve_data_from_json(const Json& j) {
    CurveData data;
    const std::string mode = j.value("mode", std::string("XY"));
    if (mode == "XY") {
        data.mode = JoinMode::XY;
    } else if (mode == "XX") {
        data.mode = JoinMode::XX;
    } else {
        throw ParseError("mode must be \"XY\" or \"XX\"");
    }
    const Json& points = require(j, "points");
    if (!points.is_array()) throw ParseError("'points' must be an array");
    if (j.contains("n")) data.n = j.at("n").get<std::size_t>();
    for (const auto& pj : points) {
        PointData pd;
        Vector homogeneous = vector_from_json(require(pj, "P"));
        if (homogeneous.size() < 3) throw ParseError("points need at least three homogeneous coordinates");
        if (is_zero(homogeneous)) throw ParseError("point with all coordinates zero");
        pd.point = ProjectivePoint(homogeneous);
        if (data.n == 0) data.n = pd.point.dimension();
        pd.chart = pj.value("chart", 0L);
        const Vector affine = pd.point.affine(pd.chart);
        pd.xs = branches_from_json(require(pj, "x"), pd.chart, affine);
        if (pj.contains("y")) pd.ys = branches_from_json(pj.at("y"), pd.chart, affine);
        if (data.mode == JoinMode::XY && pd.ys.empty()) throw ParseError("XY mode needs 'y' branches at every point");
        data.points.push_back(std::move(pd));
    }
    return data;
}

Json to_json(const ProjectiveConeComponent& c) {
    Json out;
    out["case"] = case_tag(c.pair_case);
    out["dim"] = c.projective_dim();
    Json span = Json::array();
    span.push_back(to_json(c.vertex.coords()));
    for (const auto& q : c.points) span.push_back(to_json(q.coords()));
    out["span"] = span;
    Json samples = Json::array();
    for (const auto& q : c.points) samples.push_back(to_json(plucker_line(c.vertex, q)));
    out["plucker_sample"] = samples;
    if (c.up_to_precision) out["up_to_precision"] = true;
    return out;
}

Json to_json(const JoinReport& r) {
    Json out;
    out["mode"] = r.mode == JoinMode::XY ? "XY" : "XX";
    Json points = Json::array();
    for (const auto& p : r.points) {
        Json pj;
        pj["P"] = to_json(p.point.coords());
        Json comps = Json::array();
        for (const auto& c : p.components) comps.push_back(to_json(c));
        pj["components"] = comps;
        points.push_back(pj);
    }
    out["points"] = points;
    out["markers"] = {{"j0", r.has_j0_marker}, {"tangent_family", r.tangent_family_marker}};
    out["warnings"] = r.warnings;
    return out;
}

Json to_json(const ValidationReport& r) {
    Json out;
    out["tol"] = r.tol;
    out["soundness"] = r.soundness;
    out["coverage"] = r.coverage;
    out["pass"] = r.pass;
    return out;
}

}  // namespace relcone::io
