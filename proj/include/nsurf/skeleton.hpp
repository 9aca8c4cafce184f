#pragma once

#include "nsurf/triangulation.hpp"
#include "nsurf/union_find.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace nsurf {

struct Corner {
    std::size_t tet;
    int vertex;
};

/// One appearance of an edge class inside a tetrahedron. `sign` is +1 when
/// the local low-to-high direction agrees with the class orientation.
struct EdgeEmbedding {
    std::size_t tet;
    int edge;
    int sign;
};

struct FaceClass {
    FaceRef rep;                   // lexicographically least side
    std::optional<FaceRef> other;  // absent for boundary faces
};

/// Vertex, edge and face classes of a gluing complex. Classes are numbered
/// in order of their least (tet, local index) representative.
struct Skeleton {
    std::vector<std::vector<Corner>> vertices;
    std::vector<std::vector<EdgeEmbedding>> edges;
    std::vector<FaceClass> faces;
    std::vector<FaceRef> boundary_faces;

    std::vector<std::array<std::size_t, 4>> vertex_of;
    std::vector<std::array<std::size_t, 6>> edge_of;
    std::vector<std::array<int, 6>> edge_sign;
    std::vector<std::array<std::size_t, 4>> face_of;

    /// False when some edge is identified with itself in reverse.
    bool edge_valid = true;

    std::size_t degree(std::size_t edge_class) const { return edges[edge_class].size(); }
    bool closed() const { return boundary_faces.empty(); }
};

inline Skeleton compute_skeleton(const Triangulation& t)
{
    const std::size_t n = t.size();
    Skeleton sk;
    sk.vertex_of.resize(n);
    sk.edge_of.resize(n);
    sk.edge_sign.resize(n);
    sk.face_of.resize(n);

    UnionFind verts(4 * n), edges(6 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.adjacent(i, f);
            if (!g) continue;
            for (int v = 0; v < 4; ++v)
                if (v != f) verts.unite(4 * i + v, 4 * g->tet + g->perm[v]);
            for (int e = 0; e < 6; ++e) {
                const int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
                if (a == f || b == f) continue;
                const int pa = g->perm[a], pb = g->perm[b];
                if (!edges.unite(6 * i + e, 6 * g->tet + edge_index(pa, pb), pa > pb ? 1 : 0))
                    sk.edge_valid = false;
            }
        }

    std::size_t nv = 0, ne = 0;
    auto vid = dense_class_ids(verts, 4 * n, nv);
    auto eid = dense_class_ids(edges, 6 * n, ne);
    sk.vertices.resize(nv);
    sk.edges.resize(ne);
    std::vector<int> rep_parity(ne, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (int v = 0; v < 4; ++v) {
            sk.vertex_of[i][v] = vid[4 * i + v];
            sk.vertices[vid[4 * i + v]].push_back({i, v});
        }
        for (int e = 0; e < 6; ++e) {
            const auto c = eid[6 * i + e];
            const int par = edges.find(6 * i + e).second;
            if (rep_parity[c] < 0) rep_parity[c] = par;
            const int sign = (par == rep_parity[c]) ? 1 : -1;
            sk.edge_of[i][e] = c;
            sk.edge_sign[i][e] = sign;
            sk.edges[c].push_back({i, e, sign});
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.adjacent(i, f);
            if (!g) {
                sk.face_of[i][f] = sk.faces.size();
                sk.faces.push_back({{i, f}, std::nullopt});
                sk.boundary_faces.push_back({i, f});
                continue;
            }
            FaceRef self{i, f}, other{g->tet, g->perm[f]};
            if (other < self) {
                sk.face_of[i][f] = sk.face_of[other.tet][other.face];
                continue;
            }
            sk.face_of[i][f] = sk.faces.size();
            sk.faces.push_back({self, other});
        }
    return sk;
}

/// V - E + F - T over skeleton classes.
inline long long euler_characteristic(const Skeleton& sk, std::size_t tets)
{
    return static_cast<long long>(sk.vertices.size()) - static_cast<long long>(sk.edges.size()) +
           static_cast<long long>(sk.faces.size()) - static_cast<long long>(tets);
}

inline long long euler_characteristic(const Triangulation& t)
{
    return euler_characteristic(compute_skeleton(t), t.size());
}

enum class LinkType { sphere, disk, other };

inline const char* to_string(LinkType l)
{
    switch (l) {
    case LinkType::sphere: return "sphere";
    case LinkType::disk: return "disk";
    default: return "other";
    }
}

struct Diagnostic {
    std::string code;
    std::string message;
};

struct ValidationReport {
    bool orientable = true;
    bool closed = true;
    bool edge_valid = true;
    std::vector<LinkType> vertex_link_types;
    std::vector<Diagnostic> failures;

    /// Every vertex link is a sphere or disk and no edge is reversed onto itself.
    bool is_manifold() const
    {
        if (!edge_valid) return false;
        for (auto l : vertex_link_types)
            if (l == LinkType::other) return false;
        return true;
    }

    bool closed_orientable_manifold() const { return is_manifold() && orientable && closed; }
};

namespace detail {

/// Orientation parity labelling; nullopt when none exists.
inline std::optional<std::vector<int>> orientation_labels(const Triangulation& t)
{
    UnionFind uf(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        for (int f = 0; f < 4; ++f)
            if (const auto& g = t.adjacent(i, f))
                if (!uf.unite(i, g->tet, g->perm.sign() > 0 ? 1 : 0)) return std::nullopt;
    std::vector<int> labels(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) labels[i] = uf.find(i).second ? -1 : 1;
    return labels;
}

} // namespace detail

inline bool is_orientable(const Triangulation& t)
{
    return detail::orientation_labels(t).has_value();
}

/// Orientability, closedness, edge validity and vertex-link types.
/// Defects are reported, never thrown.
inline ValidationReport validate(const Triangulation& t)
{
    const std::size_t n = t.size();
    const Skeleton sk = compute_skeleton(t);
    ValidationReport r;
    r.orientable = is_orientable(t);
    r.closed = sk.closed();
    r.edge_valid = sk.edge_valid;
    if (!r.orientable) r.failures.push_back({"non-orientable", "no consistent orientation of tetrahedra"});
    if (!r.edge_valid) r.failures.push_back({"invalid-edge", "an edge is identified with itself in reverse"});
    if (!r.closed)
        r.failures.push_back({"boundary", std::to_string(sk.boundary_faces.size()) + " unglued faces"});

    // Vertex links: corner (i,v) contributes a triangle whose vertices are the
    // directed edges (i,v,w) and whose sides lie on the faces f != v.
    UnionFind link_vertices(16 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f)
            if (const auto& g = t.adjacent(i, f))
                for (int v = 0; v < 4; ++v)
                    for (int w = 0; w < 4; ++w)
                        if (v != w && v != f && w != f)
                            link_vertices.unite(16 * i + 4 * v + w,
                                                16 * g->tet + 4 * g->perm[v] + g->perm[w]);

    const std::size_t nv = sk.vertices.size();
    std::vector<long long> tri_count(nv, 0), glued_sides(nv, 0), free_sides(nv, 0);
    std::vector<std::vector<std::size_t>> roots(nv);
    for (std::size_t c = 0; c < nv; ++c)
        for (const auto& corner : sk.vertices[c]) {
            ++tri_count[c];
            for (int f = 0; f < 4; ++f) {
                if (f == corner.vertex) continue;
                (t.adjacent(corner.tet, f) ? glued_sides[c] : free_sides[c]) += 1;
            }
            for (int w = 0; w < 4; ++w)
                if (w != corner.vertex)
                    roots[c].push_back(link_vertices.root(16 * corner.tet + 4 * corner.vertex + w));
        }
    r.vertex_link_types.resize(nv);
    for (std::size_t c = 0; c < nv; ++c) {
        std::sort(roots[c].begin(), roots[c].end());
        const auto v = static_cast<long long>(std::unique(roots[c].begin(), roots[c].end()) - roots[c].begin());
        const long long e = glued_sides[c] / 2 + free_sides[c];
        const long long chi = v - e + tri_count[c];
        LinkType type = LinkType::other;
        if (free_sides[c] == 0 && chi == 2) type = LinkType::sphere;
        else if (free_sides[c] > 0 && chi == 1) type = LinkType::disk;
        r.vertex_link_types[c] = type;
        if (type == LinkType::other)
            r.failures.push_back({"vertex-link", "vertex " + std::to_string(c) +
                                                     " has a link that is neither sphere nor disk (euler " +
                                                     std::to_string(chi) + ")"});
    }
    return r;
}

/// Throws PreconditionError unless t is a closed orientable manifold triangulation.
inline void require_closed_orientable(const Triangulation& t, const char* who)
{
    auto r = validate(t);
    if (!r.closed) throw PreconditionError(std::string(who) + ": triangulation is not closed");
    if (!r.orientable) throw PreconditionError(std::string(who) + ": triangulation is not orientable");
    if (!r.is_manifold())
        throw PreconditionError(std::string(who) + ": not a valid manifold triangulation");
}

} // namespace nsurf
