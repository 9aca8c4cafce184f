#include <catch_amalgamated.hpp>

#include "nsurf/sphere_search.hpp"
#include "support/builders.hpp"
#include "support/fixtures.hpp"

using namespace nsurf;
using namespace nsurf::testing;

namespace {

void check_certificate(const Triangulation& t, const SphereCandidate& c)
{
    auto cls = classify(t, c.sphere);
    CHECK(cls.kind == SurfaceKind::sphere);
    CHECK(cls.connected);
    CHECK_FALSE(cls.vertex_linking);
    CHECK(c.sphere.has_quads());
    if (c.pattern) CHECK(c.pattern->contains_support_of(c.sphere));
}

} // namespace

TEST_CASE("pattern enumeration order and counts")
{
    for (std::size_t n : {1, 2, 3, 5, 8, 13}) {
        CHECK(quad_support_patterns(n, 1).size() == 3 * n);
        CHECK(quad_support_patterns(n, 2).size() == 3 * n + 9 * n * (n - 1) / 2);
    }
    auto p = quad_support_patterns(3, 2);
    CHECK(p[0].str() == "{q(0,01|23)}");
    CHECK(p[2].str() == "{q(0,03|12)}");
    CHECK(p[3].str() == "{q(1,01|23)}");
    CHECK(p[9].str() == "{q(0,01|23), q(1,01|23)}");
    CHECK(p[10].str() == "{q(0,01|23), q(1,02|13)}");
    for (const auto& q : p) {
        CHECK(q.size() <= 2);
        if (q.size() == 2) CHECK(q.quads[0].first < q.quads[1].first);
    }
}

TEST_CASE("doubled tetrahedron: both searches find a quad-pair sphere")
{
    const auto d = doubled_tetrahedron();
    auto r = restricted_sphere_search(d, 2);
    REQUIRE(r.found);
    NormalVector expect(2);
    expect.quad(0, 0) = 1;
    expect.quad(1, 0) = 1;
    CHECK(r.found->sphere == expect);
    CHECK(r.found->pattern->str() == "{q(0,01|23), q(1,01|23)}");
    CHECK(r.stats.cone_enumerations == 3 * 2 + 9);
    check_certificate(d, *r.found);

    auto f = full_sphere_search(d);
    REQUIRE(f.found);
    CHECK(f.found->sphere.quad_support() == std::vector<std::size_t>{0, 1});
    check_certificate(d, *f.found);
    CHECK(full_sphere_candidates(d).size() == 3);

    CHECK_FALSE(restricted_sphere_search(d, 1).found);
}

TEST_CASE("empty triangulation and preconditions")
{
    CHECK_FALSE(restricted_sphere_search(Triangulation{}, 2).found);
    CHECK_FALSE(full_sphere_search(Triangulation{}).found);
    CHECK_THROWS_AS(restricted_sphere_search(single_tetrahedron(), 2), PreconditionError);
    CHECK_THROWS_AS(full_sphere_search(single_tetrahedron()), PreconditionError);
    CHECK_THROWS_AS(restricted_sphere_search(doubled_tetrahedron(), 0), PreconditionError);
}

TEST_CASE("S2 x S1 carries a non-separating normal sphere")
{
    const auto t = load_fixture("s2xs1.tri");
    auto f = full_sphere_search(t);
    REQUIRE(f.found);
    check_certificate(t, *f.found);
    auto r = restricted_sphere_search(t, 2);
    REQUIRE(r.found);
    check_certificate(t, *r.found);
}

TEST_CASE("0-efficient fixture: no sphere in either mode")
{
    const auto t = load_fixture("efficient5.tri");
    REQUIRE(t.size() == 5);
    CHECK_FALSE(full_sphere_search(t).found);
    auto r = restricted_sphere_search(t, 2);
    CHECK_FALSE(r.found);
    CHECK(r.stats.cone_enumerations == 3 * 5 + 9 * 5 * 4 / 2);
    CHECK(r.stats.max_rows <= 6 * 5);
}

TEST_CASE("restricted search is sound and thread-count independent")
{
    std::vector<Triangulation> corpus;
    std::size_t k = 0;
    census_search(2, [&](const Triangulation& t) {
        if (k++ % 151 == 0) corpus.push_back(t);
        return true;
    });
    auto l4 = *census_find(1, HomologyGroup{0, {4}});
    auto l5 = *census_find(1, HomologyGroup{0, {5}});
    corpus.push_back(connected_sum(l4, l5));
    corpus.push_back(load_fixture("census3.tri"));

    for (const auto& t : corpus) {
        auto one = restricted_sphere_search(t, RestrictedSearchOptions{2, 1});
        auto many = restricted_sphere_search(t, RestrictedSearchOptions{2, 4});
        CHECK(one.found.has_value() == many.found.has_value());
        if (one.found && many.found) CHECK(one.found->sphere == many.found->sphere);
        CHECK(one.stats.cone_enumerations == 3 * t.size() + 9 * t.size() * (t.size() - 1) / 2);
        CHECK(one.stats.max_rows <= 6 * t.size());
        if (one.found) {
            check_certificate(t, *one.found);
            CHECK(full_sphere_search(t).found);
        }
        for (const auto& c : full_sphere_candidates(t)) check_certificate(t, c);
    }
}

TEST_CASE("larger k finds nothing new on the doubled tetrahedron and the fixtures")
{
    for (const auto& t : {doubled_tetrahedron(), load_fixture("efficient5.tri")}) {
        auto r2 = restricted_sphere_search(t, 2);
        auto r3 = restricted_sphere_search(t, 3);
        CHECK(r2.found.has_value() == r3.found.has_value());
    }
}
