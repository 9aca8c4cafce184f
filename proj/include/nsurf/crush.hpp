#pragma once

// Crushing a connected non-trivial normal 2-sphere.
//
// Cutting along the sphere splits every tetrahedron into blocks: product
// blocks between parallel normal disks or between a triangle and its vertex,
// truncated prisms beside each quadrilateral, and (in quad-free tetrahedra) a
// central truncated tetrahedron. Collapsing the sphere to a point and
// flattening every product and prism block leaves exactly one tetrahedron for
// each quad-free tetrahedron of the input. A quad-bearing tetrahedron with
// separation {a,b}|{c,d} flattens so that face a is identified with face b
// and face c with face d, through the transpositions (a b) and (c d); the
// gluings of the survivors are found by tracing through these identifications.

#include "nsurf/homology.hpp"
#include "nsurf/normal_surface.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace nsurf {

struct CrushReport {
    std::size_t input_tets = 0;
    NormalVector sphere;
    bool separating = false;
    std::size_t complement_components = 0;
    std::vector<Triangulation> outputs;          // components, then n = 0 spheres for vanished sides
    std::vector<std::size_t> destroyed_tets;     // tetrahedra containing quadrilaterals
    std::vector<ValidationReport> validity;      // per output
    std::vector<HomologyGroup> output_h1;        // per output
    HomologyGroup input_h1;

    std::size_t output_tets() const
    {
        std::size_t s = 0;
        for (const auto& o : outputs) s += o.size();
        return s;
    }
};

/// Recoverable crushing failure; `defect` is a stable code.
struct CrushFailure {
    std::string defect;
    std::string message;
};

using CrushOutcome = std::variant<CrushReport, CrushFailure>;

/// Number of components of the complement of the surface, counted on the
/// regions into which the surface cuts each tetrahedron.
inline std::size_t complement_components(const Triangulation& t, const NormalVector& x)
{
    const std::size_t n = t.size();
    std::vector<std::array<std::size_t, 4>> corner_base(n);
    std::vector<std::size_t> central_base(n);
    std::vector<std::size_t> quad_count(n);
    std::vector<int> quad_type(n);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (int v = 0; v < 4; ++v) {
            corner_base[i][v] = total;
            total += detail::to_size(x.tri(i, v));
        }
        quad_type[i] = x.quad_type(i);
        quad_count[i] = quad_type[i] >= 0 ? detail::to_size(x.quad(i, quad_type[i])) : 0;
        central_base[i] = total;
        total += quad_count[i] + 1;
    }

    auto slab = [&](std::size_t i, int f, int v, std::size_t from_v) {
        const bool ref = (v == 0 || f == 0);
        return central_base[i] + (ref ? from_v : quad_count[i] - from_v);
    };
    // region on face f of tet i: corner slot m at v, or the middle (v = -1)
    auto region = [&](std::size_t i, int f, int v, std::size_t m) -> std::size_t {
        if (v < 0) {
            if (quad_type[i] < 0) return central_base[i];
            const int cut = separation_partner(quad_type[i], f);
            return slab(i, f, cut, quad_count[i]);
        }
        const std::size_t tv = detail::to_size(x.tri(i, v));
        if (m < tv) return corner_base[i][v] + m;
        return slab(i, f, v, m - tv);
    };

    UnionFind uf(total);
    for (std::size_t i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.adjacent(i, f);
            if (!g || FaceRef{g->tet, g->perm[f]} < FaceRef{i, f}) continue;
            const int gf = g->perm[f];
            uf.unite(region(i, f, -1, 0), region(g->tet, gf, -1, 0));
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                const std::size_t slots = detail::to_size(arc_count(x, i, f, v));
                for (std::size_t m = 0; m < slots; ++m)
                    uf.unite(region(i, f, v, m), region(g->tet, gf, g->perm[v], m));
            }
        }
    std::size_t count = 0;
    dense_class_ids(uf, total, count);
    return count;
}

namespace detail {

inline std::optional<CrushFailure> check_output(const ValidationReport& r, std::size_t k)
{
    const std::string which = "output " + std::to_string(k);
    if (!r.closed) return CrushFailure{"boundary", which + " has unglued faces"};
    if (!r.edge_valid) return CrushFailure{"invalid-edge", which + " has an edge identified with itself in reverse"};
    if (!r.orientable) return CrushFailure{"non-orientable", which + " is not orientable"};
    for (auto l : r.vertex_link_types)
        if (l != LinkType::sphere) return CrushFailure{"vertex-link", which + " has a vertex link that is not a sphere"};
    return std::nullopt;
}

} // namespace detail

/// Crushes x, which must be a connected non-trivial normal sphere in the
/// closed orientable triangulation t. Outputs are validated and checked to
/// conserve first homology; any defect is returned as a CrushFailure.
inline CrushOutcome crush_sphere(const Triangulation& t, const NormalVector& x)
{
    require_closed_orientable(t, "crush_sphere");
    const SurfaceContext ctx(t);
    if (x.size() != 7 * t.size()) throw PreconditionError("crush_sphere: vector length does not match 7n");
    if (!ctx.admissible(x)) throw PreconditionError("crush_sphere: vector is not an admissible normal surface");
    const auto cls = ctx.classify(x);
    if (!cls.connected) throw PreconditionError("crush_sphere: surface is not connected");
    if (cls.vertex_linking) throw PreconditionError("crush_sphere: surface is a trivial (vertex-linking) sphere");
    if (cls.kind != SurfaceKind::sphere) throw PreconditionError("crush_sphere: surface is not a sphere");

    const std::size_t n = t.size();
    CrushReport rep;
    rep.input_tets = n;
    rep.sphere = x;
    rep.input_h1 = h1(t);
    rep.complement_components = complement_components(t, x);
    rep.separating = rep.complement_components == 2;

    std::vector<int> quad(n);
    std::vector<std::ptrdiff_t> survivor(n, -1);
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < n; ++i) {
        quad[i] = x.quad_type(i);
        if (quad[i] >= 0) {
            rep.destroyed_tets.push_back(i);
        } else {
            survivor[i] = static_cast<std::ptrdiff_t>(survivors.size());
            survivors.push_back(i);
        }
    }

    Triangulation crushed(survivors.size());
    for (std::size_t s = 0; s < survivors.size(); ++s)
        for (int f = 0; f < 4; ++f) {
            if (crushed.adjacent(s, f)) continue;
            const std::size_t from = survivors[s];
            const auto* g = &*t.adjacent(from, f);
            Perm4 acc = g->perm;  // vertex labels of `from` -> labels of the current tet
            std::size_t cur = g->tet;
            int face = g->perm[f];
            std::size_t steps = 0;
            while (quad[cur] >= 0) {
                if (++steps > 4 * n + 4) return CrushFailure{"trace-loop", "face trace did not terminate"};
                const int exit = separation_partner(quad[cur], face);
                acc = Perm4::transposition(face, exit) * acc;
                const auto& next = *t.adjacent(cur, exit);
                acc = next.perm * acc;
                face = next.perm[exit];
                cur = next.tet;
            }
            const auto target = static_cast<std::size_t>(survivor[cur]);
            if (target == s && face == f)
                return CrushFailure{"self-glued-face", "face (" + std::to_string(from) + "," + std::to_string(f) +
                                                           ") traces back onto itself"};
            if (crushed.adjacent(target, face))
                return CrushFailure{"trace-conflict", "inconsistent face trace"};
            crushed.join(s, f, target, acc);
        }

    for (const auto& comp : tetrahedron_components(crushed)) rep.outputs.push_back(induced(crushed, comp));
    if (rep.outputs.size() > rep.complement_components)
        return CrushFailure{"output-count", std::to_string(rep.outputs.size()) + " components from a sphere with " +
                                                std::to_string(rep.complement_components) + " complementary sides"};
    while (rep.outputs.size() < rep.complement_components) rep.outputs.emplace_back();

    for (std::size_t k = 0; k < rep.outputs.size(); ++k) {
        rep.validity.push_back(validate(rep.outputs[k]));
        if (auto fail = detail::check_output(rep.validity.back(), k)) return *fail;
        rep.output_h1.push_back(h1(rep.outputs[k]));
    }

    HomologyGroup sum;
    for (const auto& g : rep.output_h1) sum = direct_sum(sum, g);
    if (!rep.separating) sum = direct_sum(sum, HomologyGroup{1, {}});
    if (!(sum == rep.input_h1))
        return CrushFailure{"homology", "H1 " + rep.input_h1.str() + " is not conserved (outputs give " + sum.str() + ")"};
    return rep;
}

} // namespace nsurf
