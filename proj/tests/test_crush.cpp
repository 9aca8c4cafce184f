#include <catch_amalgamated.hpp>

#include "nsurf/crush.hpp"
#include "nsurf/sphere_search.hpp"
#include "support/builders.hpp"
#include "support/fixtures.hpp"

using namespace nsurf;
using namespace nsurf::testing;

namespace {

void check_success(const Triangulation& t, const CrushReport& r)
{
    CHECK(r.output_tets() <= t.size() - r.destroyed_tets.size());
    CHECK(r.output_tets() < t.size());
    if (r.separating) CHECK(r.outputs.size() <= 2);
    else CHECK(r.outputs.size() == 1);
    HomologyGroup sum = r.separating ? HomologyGroup{} : HomologyGroup{1, {}};
    for (const auto& o : r.outputs) {
        CHECK(validate(o).closed_orientable_manifold());
        CHECK(euler_characteristic(o) == 0);
        sum = direct_sum(sum, h1(o));
    }
    CHECK(sum == h1(t));
}

} // namespace

TEST_CASE("doubled tetrahedron: quad pair crushes to two empty spheres")
{
    const auto d = doubled_tetrahedron();
    NormalVector x(2);
    x.quad(0, 0) = 1;
    x.quad(1, 0) = 1;
    CHECK(complement_components(d, x) == 2);
    auto out = crush_sphere(d, x);
    REQUIRE(std::holds_alternative<CrushReport>(out));
    const auto& r = std::get<CrushReport>(out);
    CHECK(r.separating);
    CHECK(r.destroyed_tets == std::vector<std::size_t>{0, 1});
    REQUIRE(r.outputs.size() == 2);
    CHECK(r.outputs[0].empty());
    CHECK(r.outputs[1].empty());
    check_success(d, r);
}

TEST_CASE("crush preconditions")
{
    const auto d = doubled_tetrahedron();
    const auto sk = compute_skeleton(d);
    CHECK_THROWS_AS(crush_sphere(d, vertex_link(sk, 2, 0)), PreconditionError);
    NormalVector two(2);
    for (int s : {0, 0}) {
        two.quad(0, s) += 1;
        two.quad(1, s) += 1;
    }
    CHECK_THROWS_AS(crush_sphere(d, two), PreconditionError);  // two parallel copies
    NormalVector bad(2);
    bad.quad(0, 0) = 1;
    CHECK_THROWS_AS(crush_sphere(d, bad), PreconditionError);
    CHECK_THROWS_AS(crush_sphere(single_tetrahedron(), NormalVector(1)), PreconditionError);
    CHECK_THROWS_AS(crush_sphere(d, NormalVector(3)), PreconditionError);
}

TEST_CASE("S2 x S1: a non-separating crush")
{
    const auto t = load_fixture("s2xs1.tri");
    auto s = full_sphere_search(t);
    REQUIRE(s.found);
    CHECK(complement_components(t, s.found->sphere) == 1);
    auto out = crush_sphere(t, s.found->sphere);
    REQUIRE(std::holds_alternative<CrushReport>(out));
    const auto& r = std::get<CrushReport>(out);
    CHECK_FALSE(r.separating);
    check_success(t, r);
}

TEST_CASE("connected sum: restricted certificate crushes with H1 conserved")
{
    auto l4 = *census_find(1, HomologyGroup{0, {4}});
    auto l5 = *census_find(1, HomologyGroup{0, {5}});
    const auto t = connected_sum(l4, l5);
    REQUIRE(validate(t).closed_orientable_manifold());
    CHECK(h1(t).str() == "Z/20");
    auto s = restricted_sphere_search(t, 2);
    REQUIRE(s.found);
    CHECK(s.found->sphere.quad_support().size() <= 2);
    auto out = crush_sphere(t, s.found->sphere);
    REQUIRE(std::holds_alternative<CrushReport>(out));
    check_success(t, std::get<CrushReport>(out));

    // determinism
    auto again = crush_sphere(t, s.found->sphere);
    REQUIRE(std::holds_alternative<CrushReport>(again));
    const auto& a = std::get<CrushReport>(out);
    const auto& b = std::get<CrushReport>(again);
    CHECK(a.outputs == b.outputs);
    CHECK(a.separating == b.separating);
}

TEST_CASE("RP3 and L(3,1) spheres are reported as crush failures, not bad output")
{
    for (int p : {2, 3}) {
        auto t = census_find(2, HomologyGroup{0, {p}});
        REQUIRE(t);
        auto spheres = full_sphere_candidates(*t);
        REQUIRE_FALSE(spheres.empty());
        for (const auto& s : spheres) {
            auto out = crush_sphere(*t, s.sphere);
            REQUIRE(std::holds_alternative<CrushFailure>(out));
            CHECK(std::get<CrushFailure>(out).defect == "homology");
        }
    }
}

TEST_CASE("every successful crush over a mixed corpus satisfies the invariants")
{
    std::vector<Triangulation> corpus{doubled_tetrahedron(), load_fixture("s2xs1.tri")};
    std::size_t k = 0;
    census_search(2, [&](const Triangulation& t) {
        if (k++ % 53 == 0) corpus.push_back(t);
        return true;
    });
    auto s3 = *census_find(1, HomologyGroup{});
    auto l5 = *census_find(1, HomologyGroup{0, {5}});
    corpus.push_back(connected_sum(s3, l5));
    corpus.push_back(connected_sum(load_fixture("s2xs1.tri"), l5));

    std::size_t successes = 0, failures = 0;
    for (const auto& t : corpus)
        for (const auto& c : full_sphere_candidates(t)) {
            auto out = crush_sphere(t, c.sphere);
            if (auto* r = std::get_if<CrushReport>(&out)) {
                ++successes;
                CHECK(r->separating == (complement_components(t, c.sphere) == 2));
                check_success(t, *r);
            } else {
                ++failures;
            }
        }
    CHECK(successes > 10);
    INFO("failures " << failures);
}
