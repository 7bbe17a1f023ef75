#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <variant>

#include "relcone/branch.hpp"
#include "relcone/errors.hpp"
#include "support.hpp"

using relcone::Branch;
using relcone::Cyclotomic;
using relcone::Series;
using relcone::Vector;
using namespace testing_support;

namespace {

Branch germ(const std::string& label, std::initializer_list<const char*> coords) {
    std::vector<Series> s;
    for (const char* c : coords) s.push_back(Series::parse(c));
    return relcone::make_branch(label, std::move(s));
}

Vector vec(std::initializer_list<long> xs) {
    Vector v;
    for (long x : xs) v.push_back(Cyclotomic(x));
    return v;
}

}  // namespace

TEST_CASE("degree and tangent") {
    const Branch b = germ("B", {"2*t^3 + t^4", "t^3", "t^5"});
    CHECK(relcone::degree(b) == 3);
    CHECK(relcone::tangent_direction(b) == vec({2, 1, 0}));
}

TEST_CASE("branches must pass through their point and move") {
    Branch off = germ("B", {"1 + t", "t^2"});
    CHECK_THROWS_AS(relcone::local_coords(off), relcone::InvalidBranch);
    off.base_point = vec({1, 0});
    CHECK(relcone::local_coords(off)[0] == Series::parse("t"));
    CHECK_THROWS_AS(relcone::degree(germ("C", {"0", "0"})), relcone::InvalidBranch);
}

TEST_CASE("tangent frame pivots on the last nonzero entry") {
    const Vector v = vec({3, 2, 0});
    const auto m = relcone::tangent_frame(v);
    CHECK(m * v == vec({1, 0, 0}));
    // Completion by e_1 and e_3 (the pivot is entry 2).
    CHECK(m * vec({1, 0, 0}) == vec({0, 1, 0}));
    CHECK(m * vec({0, 0, 1}) == vec({0, 0, 1}));
    CHECK_THROWS(relcone::tangent_frame(vec({0, 0})));
}

TEST_CASE("standard form of a cusp with a unit part") {
    const Branch b = germ("B", {"t^2 + t^3", "t^3"});
    const auto local = relcone::local_coords(b);
    const auto frame = relcone::tangent_frame(relcone::tangent_direction(b));
    const auto s = relcone::standardize("B", local, frame, *relcone::inverse(frame), 12);
    CHECK(s.k == 2);
    CHECK(s.coords[0] == Series::parse("t^2"));
    CHECK_NOTHROW(relcone::check_standard(s));
    const auto back = relcone::reconstruct_local(s);
    for (std::size_t i = 0; i < local.size(); ++i) {
        CHECK(relcone::agree_below(back[i], local[i], std::min(back[i].trunc(), 12L)));
    }
}

TEST_CASE("standard form reconstructs random disguised germs") {
    Rng rng(23);
    for (int i = 0; i < 30; ++i) {
        const Planted p = planted_pair(rng, {.max_multiplicity = 4, .max_degree = 8});
        const auto local = relcone::local_coords(p.x);
        const auto frame = relcone::tangent_frame(relcone::tangent_direction(p.x));
        relcone::StandardBranch s;
        try {
            s = relcone::standardize("X", local, frame, *relcone::inverse(frame), 20);
        } catch (const relcone::FieldExtensionRequired&) {
            continue;
        }
        CHECK(s.k == p.k);
        const auto back = relcone::reconstruct_local(s);
        for (std::size_t j = 0; j < local.size(); ++j) {
            const long known = std::min(back[j].trunc(), 20L);
            CHECK(relcone::agree_below(back[j], local[j], known));
        }
    }
}

TEST_CASE("normalize_pair dispatch") {
    const Branch x = germ("X", {"t^2", "t^3", "0"});
    const Branch y = germ("Y", {"t^2", "0", "t^3"});
    const Branch z = germ("Z", {"t^3", "t^2", "0"});
    CHECK(std::holds_alternative<relcone::SharedTangent>(relcone::normalize_pair(x, y)));
    CHECK(std::holds_alternative<relcone::Transversal>(relcone::normalize_pair(x, z)));
    CHECK(std::holds_alternative<relcone::CoincidentInfo>(relcone::normalize_pair(x, x)));

    const auto shared = std::get<relcone::SharedTangent>(relcone::normalize_pair(x, y));
    CHECK(shared.x.coords[0] == Series::parse("t^2"));
    CHECK(shared.y.coords[0] == Series::parse("t^2"));
    CHECK(shared.x.linear == shared.y.linear);
}

TEST_CASE("reparametrized copies of one germ are recognized") {
    const Branch x = germ("X", {"t^2 + t^3", "t^3 - t^5"});
    // x(2t) and x(-t + t^2)
    const Branch scaled = germ("S", {"4*t^2 + 8*t^3", "8*t^3 - 32*t^5"});
    CHECK(std::holds_alternative<relcone::CoincidentInfo>(relcone::normalize_pair(x, scaled)));
    Branch poly = x;
    for (auto& c : poly.coords) c = relcone::compose(c, Series::parse("-t + t^2"));
    poly.label = "P";
    CHECK(std::holds_alternative<relcone::CoincidentInfo>(relcone::normalize_pair(x, poly)));
    // A different germ with the same leading behaviour is not.
    const Branch other = germ("O", {"t^2 + t^3", "t^3 + t^5"});
    CHECK(std::holds_alternative<relcone::SharedTangent>(relcone::normalize_pair(x, other)));
}

TEST_CASE("leading coefficient without a supported root") {
    const Branch x = germ("X", {"t^2", "t^3"});
    const Branch y = germ("Y", {"2*t^2", "t^5"});
    CHECK_THROWS_AS(relcone::normalize_pair(x, y), relcone::FieldExtensionRequired);
    // Either order.
    CHECK_THROWS_AS(relcone::normalize_pair(y, x), relcone::FieldExtensionRequired);
    // A square leading ratio is fine.
    CHECK_NOTHROW(relcone::normalize_pair(x, germ("Y", {"4*t^2", "t^5"})));
}

TEST_CASE("mismatched inputs") {
    const Branch x = germ("X", {"t^2", "t^3"});
    CHECK_THROWS_AS(relcone::normalize_pair(x, germ("Y", {"t", "t^2", "t^3"})), relcone::InvalidBranch);
    Branch moved = x;
    moved.chart = 1;
    CHECK_THROWS_AS(relcone::normalize_pair(x, moved), relcone::InconsistentChart);
}
