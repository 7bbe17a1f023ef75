#pragma once

#include <json.hpp>

#include "relcone/branch.hpp"
#include "relcone/cone.hpp"
#include "relcone/join.hpp"
#include "relcone/oracle.hpp"

namespace relcone::io {

using Json = nlohmann::json;

// Exact values travel as canonical strings ("1/2*z8^1 - 3"); plain JSON
// integers are accepted on input.
Cyclotomic number_from_json(const Json& j);
Json to_json(const Cyclotomic& c);
Vector vector_from_json(const Json& j);
Json to_json(const Vector& v);

/// {"label", "chart", "point", "coords", "exact", "trunc"}. A missing point
/// means the origin of the chart; "exact" defaults to true.
Branch branch_from_json(const Json& j);
Json to_json(const Branch& b);

/// Caps every coordinate at `trunc` and marks it inexact.
Branch with_truncation(Branch b, long trunc);

Json to_json(const Provenance& p);
Json to_json(const LinearCone& c);
/// Reads {"subspaces": [{"span": [[...], ...]}, ...]}; provenance is optional.
LinearCone cone_from_json(const Json& j);

Json to_json(const StandardBranch& s);
Json to_json(const NormalizedPair& np);

/// {"mode": "XY"|"XX", "points": [{"P", "chart", "x": [...], "y": [...]}]}.
/// Branches inherit the point's chart and affine coordinates when they omit
/// their own.
CurveData curve_data_from_json(const Json& j);
Json to_json(const ProjectiveConeComponent& c);
Json to_json(const JoinReport& r);

Json to_json(const ValidationReport& r);

}  // namespace relcone::io
