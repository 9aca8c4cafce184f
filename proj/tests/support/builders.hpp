#pragma once

// Test-only triangulation builders: tiny census search, subdivision and
// connected sum. None of these are part of the library surface.

#include "nsurf/homology.hpp"
#include "nsurf/triangulation.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace nsurf::testing {

inline Triangulation doubled_tetrahedron()
{
    Triangulation t(2);
    for (int f = 0; f < 4; ++f) t.join(0, f, 1, Perm4());
    return t;
}

inline Triangulation single_tetrahedron() { return Triangulation(1); }

/// Odd permutations sending f to g.
inline std::vector<Perm4> odd_perms_mapping(int f, int g)
{
    std::vector<Perm4> out;
    std::array<int, 4> a{0, 1, 2, 3};
    do {
        Perm4 p(a[0], a[1], a[2], a[3]);
        if (p[f] == g && p.sign() < 0) out.push_back(p);
    } while (std::next_permutation(a.begin(), a.end()));
    return out;
}

/// Depth-first search over all oriented face pairings of n tetrahedra.
/// `visit` receives every closed connected gluing whose validation passes;
/// returning false stops the search.
inline void census_search(std::size_t n, const std::function<bool(const Triangulation&)>& visit)
{
    Triangulation t(n);
    bool stop = false;
    auto rec = [&](auto&& self) -> void {
        if (stop) return;
        std::size_t i = n;
        int f = 0;
        for (std::size_t a = 0; a < n && i == n; ++a)
            for (int b = 0; b < 4; ++b)
                if (!t.adjacent(a, b)) {
                    i = a;
                    f = b;
                    break;
                }
        if (i == n) {
            if (tetrahedron_components(t).size() != 1) return;
            if (!validate(t).closed_orientable_manifold()) return;
            if (!visit(t)) stop = true;
            return;
        }
        for (std::size_t j = i; j < n && !stop; ++j)
            for (int g = 0; g < 4 && !stop; ++g) {
                if (j == i && g <= f) continue;
                if (t.adjacent(j, g)) continue;
                // keep the search connected: tet j must already touch 0..i or be the next new one
                for (const auto& p : odd_perms_mapping(f, g)) {
                    t.join(i, f, j, p);
                    self(self);
                    t.unjoin(i, f);
                    if (stop) break;
                }
            }
    };
    rec(rec);
}

/// First census triangulation with the given H1, if any.
inline std::optional<Triangulation> census_find(std::size_t n, const HomologyGroup& target)
{
    std::optional<Triangulation> found;
    census_search(n, [&](const Triangulation& t) {
        if (h1(t) == target) {
            found = t;
            return false;
        }
        return true;
    });
    return found;
}

/// 1-4 move: cones tetrahedron `a` from a new interior vertex.
inline Triangulation subdivide(const Triangulation& t, std::size_t a)
{
    const std::size_t n = t.size();
    Triangulation r(n + 3);
    // piece k of a lives at index k==0 ? a : n+k-1 and has the new vertex at position k
    auto piece = [&](int k) { return k == 0 ? a : n + static_cast<std::size_t>(k) - 1; };
    auto image = [&](std::size_t tet, int face) { return tet == a ? piece(face) : tet; };
    for (std::size_t i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.adjacent(i, f);
            if (!g) continue;
            const std::size_t src = image(i, f), dst = image(g->tet, g->perm[f]);
            if (r.adjacent(src, f)) continue;
            r.join(src, f, dst, g->perm);
        }
    for (int k = 0; k < 4; ++k)
        for (int m = k + 1; m < 4; ++m) r.join(piece(k), m, piece(m), Perm4::transposition(k, m));
    return r;
}

/// Connected sum through a face: cuts `left` open along face (a, f) and
/// `right` along face (b, h), and joins the two resulting pillow-shaped
/// boundary spheres with a triangulated pillow x [0,1] collar of 6
/// tetrahedra. Corner v of face f is matched to corner sigma(v) of face h,
/// sigma being the increasing bijection.
inline Triangulation connected_sum(const Triangulation& left, FaceRef lf, const Triangulation& right, FaceRef rf)
{
    const std::size_t nl = left.size(), nr = right.size();
    const auto lg = *left.adjacent(lf.tet, lf.face);
    const auto rg = *right.adjacent(rf.tet, rf.face);
    Triangulation r(nl + nr + 6);
    for (std::size_t i = 0; i < nl; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = left.adjacent(i, f);
            if (!g || r.adjacent(i, f)) continue;
            if ((FaceRef{i, f} == lf) || (FaceRef{g->tet, g->perm[f]} == lf)) continue;
            r.join(i, f, g->tet, g->perm);
        }
    for (std::size_t i = 0; i < nr; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = right.adjacent(i, f);
            if (!g || r.adjacent(nl + i, f)) continue;
            if ((FaceRef{i, f} == rf) || (FaceRef{g->tet, g->perm[f]} == rf)) continue;
            r.join(nl + i, f, nl + g->tet, g->perm);
        }

    int lv[3], rv[3], k = 0, m = 0;
    for (int x = 0; x < 4; ++x) {
        if (x != lf.face) lv[k++] = x;
        if (x != rf.face) rv[m++] = x;
    }
    // Collar points: (index 0..2 into lv, level). Prism side 0 meets (lf) / (rf),
    // side 1 meets their partners.
    using Point = std::pair<int, int>;
    const std::array<std::array<Point, 4>, 3> stair{{{Point{0, 0}, Point{1, 0}, Point{2, 0}, Point{2, 1}},
                                                    {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{2, 1}},
                                                    {Point{0, 0}, Point{0, 1}, Point{1, 1}, Point{2, 1}}}};
    const std::size_t base = nl + nr;
    auto cell = [&](int side, int c) { return base + static_cast<std::size_t>(3 * side + c); };
    auto position = [&](int c, Point p) {
        for (int x = 0; x < 4; ++x)
            if (stair[c][x] == p) return x;
        return -1;
    };
    for (int side = 0; side < 2; ++side)
        for (int c = 0; c < 3; ++c)
            for (int f = 0; f < 4; ++f) {
                if (r.adjacent(cell(side, c), f)) continue;
                std::vector<Point> pts;
                for (int x = 0; x < 4; ++x)
                    if (x != f) pts.push_back(stair[c][x]);
                std::set<int> corners;
                for (auto& p : pts) corners.insert(p.first);
                const bool same_level = pts[0].second == pts[1].second && pts[1].second == pts[2].second;
                std::array<int, 4> img{};
                if (corners.size() == 3 && same_level) {
                    // end triangle: glue to the host complex
                    const bool lower = pts[0].second == 0;
                    const auto& g = lower ? lg : rg;
                    const FaceRef own = lower ? lf : rf;
                    const int* labels = lower ? lv : rv;
                    std::size_t target;
                    int tface;
                    for (int x = 0; x < 4; ++x) {
                        if (x == f) continue;
                        const int v = labels[stair[c][x].first];
                        img[x] = side == 0 ? v : g.perm[v];
                    }
                    tface = side == 0 ? own.face : g.perm[own.face];
                    target = side == 0 ? own.tet : g.tet;
                    img[f] = tface;
                    r.join(cell(side, c), f, (lower ? 0 : nl) + target, Perm4(img[0], img[1], img[2], img[3]));
                    continue;
                }
                // interior face of the prism, or a side face shared with the other prism
                const int other_side = corners.size() == 3 ? side : 1 - side;
                for (int c2 = 0; c2 < 3; ++c2)
                    for (int f2 = 0; f2 < 4; ++f2) {
                        if (other_side == side && c2 == c) continue;
                        std::vector<Point> q;
                        for (int x = 0; x < 4; ++x)
                            if (x != f2) q.push_back(stair[c2][x]);
                        auto a = pts, b = q;
                        std::sort(a.begin(), a.end());
                        std::sort(b.begin(), b.end());
                        if (a != b || r.adjacent(cell(other_side, c2), f2)) continue;
                        for (int x = 0; x < 4; ++x) img[x] = x == f ? f2 : position(c2, stair[c][x]);
                        r.join(cell(side, c), f, cell(other_side, c2), Perm4(img[0], img[1], img[2], img[3]));
                        c2 = 3;
                        break;
                    }
            }
    return r;
}

inline Triangulation connected_sum(const Triangulation& left, const Triangulation& right)
{
    return connected_sum(left, FaceRef{0, 0}, right, FaceRef{0, 0});
}

/// Random closed oriented gluing of n tetrahedra (may be invalid).
inline Triangulation random_gluing(std::size_t n, std::mt19937& rng)
{
    for (;;) {
        Triangulation t(n);
        std::vector<FaceRef> open;
        for (std::size_t i = 0; i < n; ++i)
            for (int f = 0; f < 4; ++f) open.push_back({i, f});
        std::shuffle(open.begin(), open.end(), rng);
        for (std::size_t k = 0; k + 1 < open.size(); k += 2) {
            auto [i, f] = open[k];
            auto [j, g] = open[k + 1];
            auto perms = odd_perms_mapping(f, g);
            t.join(i, f, j, perms[std::uniform_int_distribution<std::size_t>(0, perms.size() - 1)(rng)]);
        }
        if (tetrahedron_components(t).size() == 1) return t;
    }
}

} // namespace nsurf::testing
