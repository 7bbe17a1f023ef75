#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relcone/cone.hpp"
#include "relcone/errors.hpp"
#include "support.hpp"

using relcone::Branch;
using relcone::Cyclotomic;
using relcone::LinearCone;
using relcone::PairCase;
using relcone::Series;
using relcone::Vector;
using namespace testing_support;

namespace {

Branch germ(const std::string& label, std::initializer_list<const char*> coords, long trunc = 0) {
    std::vector<Series> s;
    for (const char* c : coords) s.push_back(trunc > 0 ? Series::parse(c, trunc) : Series::parse(c));
    return relcone::make_branch(label, std::move(s));
}

Vector vec(std::initializer_list<long> xs) {
    Vector v;
    for (long x : xs) v.push_back(Cyclotomic(x));
    return v;
}

LinearCone cone_of(std::size_t n, std::initializer_list<relcone::Matrix> spans) {
    LinearCone c(n);
    for (const auto& s : spans) c.insert(s, {});
    return c;
}

}  // namespace

TEST_CASE("cusp pair gives the planes y = z and y = -z") {
    const Branch x = germ("X", {"t^2", "t^3", "0"});
    const Branch y = germ("Y", {"t^2", "0", "t^3"});
    const auto pc = relcone::cone_pair_detailed(x, y);
    CHECK(pc.pair_case == PairCase::SharedTangent);
    CHECK(pc.warnings.empty());
    const LinearCone& c = pc.cone;
    CHECK(c.plane_count() == 2);
    CHECK(c.line_count() == 0);
    CHECK(c.same_subspaces(cone_of(3, {{vec({1, 0, 0}), vec({0, 1, 1})}, {vec({1, 0, 0}), vec({0, 1, -1})}})));
    for (const auto& s : c.subspaces()) {
        CHECK(s.provenance.n_i == 6);
        CHECK(s.provenance.root_order == 2);
        CHECK(s.provenance.x_label == "X");
    }
    CHECK(relcone::cone_membership(vec({0, 1, 1}), c));
    CHECK(relcone::cone_membership(vec({1, 5, -5}), c));
    CHECK_FALSE(relcone::cone_membership(vec({0, 1, 2}), c));
    CHECK_FALSE(relcone::cone_membership(vec({0, 0, 1}), c));
    CHECK(relcone::cone_membership(vec({0, 0, 0}), c));
}

TEST_CASE("self pairs") {
    const auto line = relcone::cone_pair_detailed(germ("C", {"t", "t^2"}), germ("C", {"t", "t^2"}));
    CHECK(line.pair_case == PairCase::CoincidentSmooth);
    CHECK(line.cone.same_subspaces(cone_of(2, {{vec({1, 0})}})));
    CHECK(line.cone.subspaces()[0].provenance.pair_case == PairCase::CoincidentSmooth);

    const LinearCone plane = relcone::cone_pair(germ("K", {"t^2", "t^3"}), germ("K", {"t^2", "t^3"}));
    CHECK(plane.same_subspaces(cone_of(2, {{vec({1, 0}), vec({0, 1})}})));
}

TEST_CASE("transversal pairs span both tangents") {
    const auto pc = relcone::cone_pair_detailed(germ("X", {"t^2", "t^3", "t^4"}), germ("Y", {"t^3", "t", "0"}));
    CHECK(pc.pair_case == PairCase::Transversal);
    CHECK(pc.cone.same_subspaces(cone_of(3, {{vec({1, 0, 0}), vec({0, 1, 0})}})));
}

TEST_CASE("a vanishing difference contributes only the tangent line") {
    const LinearCone c = relcone::cone_pair(germ("X", {"t", "t^2"}), germ("Y", {"t", "t^2 + t^7"}));
    CHECK(c.same_subspaces(cone_of(2, {{vec({1, 0}), vec({0, 1})}})));
    // (t^2, t^4 - t^5) is x(-t): eps = 1 vanishes, eps = -1 leaves 2 t^10.
    const auto d = relcone::cone_pair_detailed(germ("X", {"t^2", "t^4 + t^5"}), germ("Y", {"t^2", "t^4 - t^5"}));
    CHECK(d.cone.same_subspaces(cone_of(2, {{vec({1, 0}), vec({0, 1})}})));
    CHECK(d.warnings.empty());
}

TEST_CASE("cone agrees with the formula on planted pairs") {
    Rng rng(31);
    for (int i = 0; i < 40; ++i) {
        const Planted p = planted_pair(rng, {.max_multiplicity = 4, .max_degree = 10});
        LinearCone got;
        try {
            got = relcone::cone_pair(p.x, p.y);
        } catch (const relcone::FieldExtensionRequired&) {
            continue;
        }
        INFO(describe(p));
        CHECK(got.same_subspaces(p.expected));
    }
}

TEST_CASE("cone_sets is the union over pairs") {
    const Branch x1 = germ("X1", {"t^2", "t^3", "0"});
    const Branch x2 = germ("X2", {"t", "0", "t^2"});
    const Branch y1 = germ("Y1", {"t^2", "0", "t^3"});
    const auto sc = relcone::cone_sets_detailed({x1, x2}, {y1});
    CHECK(sc.pairs.size() == 2);
    LinearCone want = relcone::cone_pair(x1, y1);
    want.merge(relcone::cone_pair(x2, y1));
    CHECK(sc.cone.same_subspaces(want));
}

TEST_CASE("truncated inputs") {
    // Enough terms: the cusp pair is determined.
    const LinearCone c = relcone::cone_pair(germ("X", {"t^2", "t^3", "0"}, 20), germ("Y", {"t^2", "0", "t^3"}, 20));
    CHECK(c.plane_count() == 2);
    // Difference zero below the truncation: no guessing.
    CHECK_THROWS_AS(relcone::cone_pair(germ("A", {"t^2", "t^3"}, 4), germ("B", {"t^2", "t^3 + t^4"}, 4)),
                    relcone::PrecisionExhausted);
    try {
        relcone::cone_pair(germ("A", {"t^2", "t^3"}, 4), germ("B", {"t^2", "t^3 + t^4"}, 4));
    } catch (const relcone::PrecisionExhausted& e) {
        CHECK(std::string(e.what()).find("'A'") != std::string::npos);
        CHECK(std::string(e.what()).find("'B'") != std::string::npos);
    }
    // Vanishing through the working order: coincident up to precision.
    const auto same = relcone::cone_pair_detailed(germ("A", {"t", "t^2"}, 40), germ("B", {"t", "t^2"}, 40));
    CHECK(same.pair_case == PairCase::SharedTangent);
    CHECK(same.cone.same_subspaces(cone_of(2, {{vec({1, 0})}})));
    CHECK(same.cone.subspaces()[0].provenance.up_to_precision);
    CHECK(same.warnings.size() == 1);
}

TEST_CASE("unresolved exact pairs are flagged, or refused on request") {
    // Same germ through non-polynomial reparametrizations: (s^2, s^3) with
    // s = t + t^2 and s = t - t^2.
    Branch x = germ("X", {"t^2", "t^3"});
    Branch y = x;
    for (auto& c : x.coords) c = relcone::compose(c, Series::parse("t + t^2"));
    for (auto& c : y.coords) c = relcone::compose(c, Series::parse("t - t^2"));
    y.label = "Y";
    // Both factor through s, so x = y(sigma) for a non-polynomial sigma.
    const auto pc = relcone::cone_pair_detailed(x, y);
    CHECK(pc.cone.same_subspaces(cone_of(2, {{vec({1, 0}), vec({0, 1})}})));

    relcone::ConeOptions strict;
    strict.unresolved = relcone::UnresolvedPolicy::Error;
    const Branch p = germ("P", {"t", "t^2 + t^3"});
    Branch q = p;
    for (auto& c : q.coords) c = relcone::compose(c, Series::parse("t + t^2"));
    q.label = "Q";
    Branch r = p;
    for (auto& c : r.coords) c = relcone::compose(c, Series::parse("t - t^2"));
    r.label = "R";
    const auto flagged = relcone::cone_pair_detailed(q, r);
    CHECK(flagged.pair_case == PairCase::SharedTangent);
    CHECK(flagged.cone.same_subspaces(cone_of(2, {{vec({1, 0})}})));
    CHECK(flagged.cone.subspaces()[0].provenance.up_to_precision);
    REQUIRE(flagged.warnings.size() == 1);
    CHECK(flagged.warnings[0].rfind("CoincidentUpToPrecision", 0) == 0);
    CHECK_THROWS_AS(relcone::cone_pair(q, r, strict), relcone::PrecisionExhausted);
}

TEST_CASE("linear cone canonical form") {
    LinearCone c(3);
    c.insert({vec({0, 2, 0})}, {});
    c.insert({vec({1, 0, 0}), vec({0, 1, 0})}, {});  // absorbs the line
    c.insert({vec({0, 1, 0}), vec({1, 1, 0})}, {});  // same plane
    CHECK(c.subspaces().size() == 1);
    CHECK(c.plane_count() == 1);
    LinearCone d(3);
    d.insert({vec({1, 1, 0}), vec({1, -1, 0})}, {});
    CHECK(c.same_subspaces(d));
    const auto moved = relcone::map_cone({vec({0, 0, 1}), vec({0, 1, 0}), vec({1, 0, 0})}, c);
    CHECK(relcone::cone_membership(vec({0, 1, 1}), moved));
    CHECK_FALSE(relcone::cone_membership(vec({1, 0, 0}), moved));
}
