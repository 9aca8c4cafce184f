#include <catch_amalgamated.hpp>

#include "nsurf/enumeration.hpp"
#include "support/builders.hpp"

using namespace nsurf;
using namespace nsurf::testing;

namespace {

NormalVector quad_pair(int s)
{
    NormalVector x(2);
    x.quad(0, s) = 1;
    x.quad(1, s) = 1;
    return x;
}

std::vector<Triangulation> small_corpus()
{
    std::vector<Triangulation> out{doubled_tetrahedron()};
    census_search(1, [&](const Triangulation& t) {
        out.push_back(t);
        return true;
    });
    std::size_t taken = 0;
    census_search(2, [&](const Triangulation& t) {
        if (taken++ % 97 == 0) out.push_back(t);
        return true;
    });
    return out;
}

} // namespace

TEST_CASE("matching system shapes")
{
    auto m = matching_system(doubled_tetrahedron());
    CHECK(m.rows.size() == 12);
    CHECK(m.columns == 14);
    for (const auto& row : m.dense()) {
        CHECK(std::count(row.begin(), row.end(), 1) == 2);
        CHECK(std::count(row.begin(), row.end(), -1) == 2);
    }
    auto s = matching_system(single_tetrahedron());
    CHECK(s.rows.empty());
    CHECK(s.columns == 7);

    // three rows per interior face on every corpus member; coefficients balance
    for (const auto& t : small_corpus()) {
        auto mt = matching_system(t);
        CHECK(mt.rows.size() == 3 * (2 * t.size()));
        for (const auto& r : mt.rows) {
            int sum = 0, mass = 0;
            for (auto [c, k] : r.terms) {
                sum += k;
                mass += std::abs(k);
            }
            CHECK(sum == 0);
            CHECK(mass <= 4);
        }
    }
}

TEST_CASE("admissibility")
{
    const auto d = doubled_tetrahedron();
    CHECK(is_admissible(d, NormalVector(2)));
    CHECK(is_admissible(d, quad_pair(0)));
    NormalVector two_types(2);
    two_types.quad(0, 0) = 1;
    two_types.quad(0, 1) = 1;
    CHECK_FALSE(is_admissible(d, two_types));
    NormalVector lonely(2);
    lonely.quad(0, 0) = 1;
    CHECK_FALSE(is_admissible(d, lonely));
    NormalVector negative(2);
    negative.tri(0, 0) = -1;
    negative.tri(1, 0) = -1;
    CHECK_FALSE(is_admissible(d, negative));
    CHECK_THROWS_AS(is_admissible(d, NormalVector(3)), PreconditionError);

    for (const auto& t : small_corpus()) {
        auto sk = compute_skeleton(t);
        NormalVector all(t.size());
        for (std::size_t v = 0; v < sk.vertices.size(); ++v) {
            auto link = vertex_link(sk, t.size(), v);
            CHECK(is_admissible(t, link));
            all = all + link;
        }
        for (std::size_t i = 0; i < t.size(); ++i)
            for (int v = 0; v < 4; ++v) CHECK(all.tri(i, v) == 1);
        CHECK(is_admissible(t, all));
    }
}

TEST_CASE("vector line parsing")
{
    auto x = parse_normal_vector("0 0 0 0 1 0 0  0 0 0 0 1 0 0", 2);
    CHECK(x == quad_pair(0));
    CHECK(x.str() == "0 0 0 0 1 0 0 0 0 0 0 1 0 0");
    CHECK_THROWS(parse_normal_vector("0 0 0", 2));
    CHECK_THROWS(parse_normal_vector("0 0 0 0 1 0 a 0 0 0 0 1 0 0", 2));
}

TEST_CASE("piece complex counts on the doubled tetrahedron")
{
    const auto d = doubled_tetrahedron();
    const auto sk = compute_skeleton(d);
    const auto m = matching_system(d, sk);

    auto pc = build_piece_complex(d, sk, m, quad_pair(0));
    CHECK(pc.pieces.size() == 2);
    CHECK(pc.arcs.size() == 4);
    CHECK(pc.points == 4);
    CHECK(pc.euler() == 2);
    // weight 1 on edges 02, 03, 12, 13; 0 on 01 and 23
    for (int e = 0; e < 6; ++e)
        CHECK(pc.edge_weights[sk.edge_of[0][e]] == ((e == 0 || e == 5) ? 0 : 1));

    auto lk = build_piece_complex(d, sk, m, vertex_link(sk, 2, 0));
    CHECK(lk.pieces.size() == 2);
    CHECK(lk.arcs.size() == 3);
    CHECK(lk.points == 3);

    auto z = build_piece_complex(d, sk, m, NormalVector(2));
    CHECK(z.pieces.empty());
    CHECK(z.arcs.empty());
    CHECK(z.points == 0);

    NormalVector bad(2);
    bad.quad(0, 1) = 1;
    CHECK_THROWS_AS(build_piece_complex(d, sk, m, bad), PreconditionError);
}

TEST_CASE("classification: quad pair, links, link sums")
{
    const auto d = doubled_tetrahedron();
    for (int s = 0; s < 3; ++s) {
        auto c = classify(d, quad_pair(s));
        CHECK(c.kind == SurfaceKind::sphere);
        CHECK(c.connected);
        CHECK(c.closed);
        CHECK(c.euler == 2);
        CHECK_FALSE(c.vertex_linking);
        CHECK(is_nontrivial_sphere(c));
        CHECK(quad_pair(s).quad_support() == std::vector<std::size_t>{0, 1});
    }
    const auto sk = compute_skeleton(d);
    auto a = vertex_link(sk, 2, 0), b = vertex_link(sk, 2, 1);
    auto ca = classify(d, a);
    CHECK(ca.kind == SurfaceKind::sphere);
    CHECK(ca.vertex_linking);
    CHECK(ca.euler == 2);
    CHECK_FALSE(is_nontrivial_sphere(ca));

    auto sum = a + b;
    auto cs = classify(d, sum);
    CHECK_FALSE(cs.connected);
    CHECK(cs.component_count == 2);
    auto parts = components(d, sum);
    std::vector<NormalVector> expect{a, b};
    std::sort(expect.begin(), expect.end());
    CHECK(parts == expect);

    CHECK(classify(d, NormalVector(2)).kind == SurfaceKind::empty);
}

TEST_CASE("surfaces with boundary")
{
    const auto t = single_tetrahedron();
    NormalVector tri(1), quad(1);
    tri.tri(0, 2) = 1;
    quad.quad(0, 1) = 1;
    auto a = classify(t, tri);
    CHECK(a.kind == SurfaceKind::disk);
    CHECK_FALSE(a.closed);
    CHECK(a.euler == 1);
    auto b = classify(t, quad);
    CHECK(b.kind == SurfaceKind::disk);
    CHECK_FALSE(b.vertex_linking);
    auto two = quad.scaled(2);
    CHECK(classify(t, two).component_count == 2);
}

TEST_CASE("surface invariants over small enumerated surfaces")
{
    std::size_t checked = 0;
    for (const auto& t : small_corpus()) {
        const SurfaceContext ctx(t);
        const auto& sk = ctx.skeleton();
        std::set<NormalVector> links;
        for (std::size_t v = 0; v < sk.vertices.size(); ++v) links.insert(vertex_link(sk, t.size(), v));

        auto xs = brute_force_solutions(t, 1);
        for (const auto& v : vertex_solutions(ctx).vectors) xs.push_back(v);
        for (const auto& x : xs) {
            if (x.is_zero()) continue;
            ++checked;
            REQUIRE(ctx.admissible(x));
            const auto pc = build_piece_complex(t, sk, ctx.matching(), x);
            Integer total = 0;
            for (const auto& c : x.coords()) total += c;
            CHECK(Integer(pc.pieces.size()) == total);
            Integer weight_sum = 0;
            for (const auto& w : pc.edge_weights) weight_sum += w;
            CHECK(Integer(pc.points) == weight_sum);
            CHECK(pc.euler() == euler_integer(t, sk, x));

            const auto a = ctx.analyse(x);
            NormalVector rebuilt(t.size());
            for (const auto& comp : a.components) {
                rebuilt = rebuilt + comp;
                CHECK(ctx.admissible(comp));
                const auto cc = ctx.classify(comp);
                CHECK(cc.connected);
                // three characterisations of a vertex link agree
                const bool quad_free = !comp.has_quads();
                CHECK(cc.vertex_linking == quad_free);
                CHECK(quad_free == (links.count(comp) == 1));
                if (cc.kind == SurfaceKind::sphere) CHECK(cc.orientable);
            }
            CHECK(rebuilt == x);
            CHECK(a.cls.component_count == a.components.size());
        }
    }
    CHECK(checked > 300);
}
