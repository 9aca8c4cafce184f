#pragma once

// Normal surfaces in standard (triangle + quadrilateral) coordinates.
//
// Column layout, frozen: tetrahedra ascending, and within tetrahedron i the
// seven columns t(i,0) t(i,1) t(i,2) t(i,3) q(i,01|23) q(i,02|13) q(i,03|12).

#include "nsurf/integer.hpp"
#include "nsurf/skeleton.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace nsurf {

constexpr std::size_t tri_column(std::size_t tet, int vertex) { return 7 * tet + static_cast<std::size_t>(vertex); }
constexpr std::size_t quad_column(std::size_t tet, int sep) { return 7 * tet + 4 + static_cast<std::size_t>(sep); }

class NormalVector {
public:
    NormalVector() = default;
    explicit NormalVector(std::size_t tets) : coords_(7 * tets, Integer(0)) {}
    explicit NormalVector(std::vector<Integer> coords) : coords_(std::move(coords))
    {
        if (coords_.size() % 7 != 0) throw PreconditionError("normal vector length is not a multiple of 7");
    }

    std::size_t tets() const noexcept { return coords_.size() / 7; }
    std::size_t size() const noexcept { return coords_.size(); }

    const Integer& tri(std::size_t tet, int v) const { return coords_[tri_column(tet, v)]; }
    const Integer& quad(std::size_t tet, int s) const { return coords_[quad_column(tet, s)]; }
    Integer& tri(std::size_t tet, int v) { return coords_[tri_column(tet, v)]; }
    Integer& quad(std::size_t tet, int s) { return coords_[quad_column(tet, s)]; }

    const Integer& operator[](std::size_t c) const { return coords_[c]; }
    Integer& operator[](std::size_t c) { return coords_[c]; }

    const std::vector<Integer>& coords() const noexcept { return coords_; }

    bool is_zero() const
    {
        return std::all_of(coords_.begin(), coords_.end(), [](const Integer& x) { return x == 0; });
    }

    /// Quad type present in the tetrahedron (-1 if none, -2 if several).
    int quad_type(std::size_t tet) const
    {
        int found = -1;
        for (int s = 0; s < 3; ++s)
            if (quad(tet, s) != 0) found = (found == -1) ? s : -2;
        return found;
    }

    /// Tetrahedra carrying a nonzero quadrilateral coordinate.
    std::vector<std::size_t> quad_support() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < tets(); ++i)
            if (quad(i, 0) != 0 || quad(i, 1) != 0 || quad(i, 2) != 0) out.push_back(i);
        return out;
    }

    bool has_quads() const { return !quad_support().empty(); }

    NormalVector operator+(const NormalVector& o) const
    {
        NormalVector r(*this);
        for (std::size_t c = 0; c < size(); ++c) r.coords_[c] += o.coords_[c];
        return r;
    }

    NormalVector scaled(const Integer& k) const
    {
        NormalVector r(*this);
        for (auto& x : r.coords_) x *= k;
        return r;
    }

    /// One line of space-separated decimal coordinates.
    std::string str() const
    {
        std::string s;
        for (std::size_t c = 0; c < coords_.size(); ++c) {
            if (c) s += ' ';
            s += coords_[c].str();
        }
        return s;
    }

    auto operator<=>(const NormalVector& o) const { return coords_ <=> o.coords_; }
    bool operator==(const NormalVector&) const = default;

private:
    std::vector<Integer> coords_;
};

/// Parses a vector line; the length must be 7 * tets.
inline NormalVector parse_normal_vector(const std::string& line, std::size_t tets)
{
    std::istringstream in(line);
    std::vector<Integer> xs;
    std::string tok;
    while (in >> tok) {
        if (tok.empty() || tok.find_first_not_of("-0123456789") != std::string::npos ||
            tok.find('-', 1) != std::string::npos || tok == "-")
            throw ParseError(1, "invalid coordinate '" + tok + "'");
        xs.emplace_back(tok);
    }
    if (xs.size() != 7 * tets)
        throw ParseError(1, "expected " + std::to_string(7 * tets) + " coordinates, got " +
                                std::to_string(xs.size()));
    return NormalVector(std::move(xs));
}

// ---------------------------------------------------------------------------
// Matching equations

struct MatchingRow {
    std::size_t face_class;
    FaceRef side;   // the face class's least representative
    int vertex;     // vertex of `side` whose corner arcs are counted
    std::vector<std::pair<std::size_t, int>> terms;  // merged (column, coefficient), column-sorted
};

/// One row per (interior face class, arc type): the arcs cutting off `vertex`
/// counted from both sides of the face must agree.
struct MatchingSystem {
    std::size_t columns = 0;
    std::vector<MatchingRow> rows;

    std::vector<std::vector<int>> dense() const
    {
        std::vector<std::vector<int>> m(rows.size(), std::vector<int>(columns, 0));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (auto [c, k] : rows[r].terms) m[r][c] = k;
        return m;
    }

    Integer evaluate(std::size_t row, const std::vector<Integer>& x) const
    {
        Integer s = 0;
        for (auto [c, k] : rows[row].terms) s += k * x[c];
        return s;
    }
};

inline MatchingSystem matching_system(const Triangulation& t, const Skeleton& sk)
{
    MatchingSystem m;
    m.columns = 7 * t.size();
    for (std::size_t fc = 0; fc < sk.faces.size(); ++fc) {
        const auto& cls = sk.faces[fc];
        if (!cls.other) continue;
        const auto [i, f] = cls.rep;
        const auto& g = *t.adjacent(i, f);
        const int gface = g.perm[f];
        for (int v = 0; v < 4; ++v) {
            if (v == f) continue;
            const int w = g.perm[v];
            std::map<std::size_t, int> acc;
            acc[tri_column(i, v)] += 1;
            acc[quad_column(i, separation(v, f))] += 1;
            acc[tri_column(g.tet, w)] -= 1;
            acc[quad_column(g.tet, separation(w, gface))] -= 1;
            MatchingRow row{fc, cls.rep, v, {}};
            for (auto [c, k] : acc)
                if (k != 0) row.terms.emplace_back(c, k);
            m.rows.push_back(std::move(row));
        }
    }
    return m;
}

inline MatchingSystem matching_system(const Triangulation& t)
{
    if (!validate(t).is_manifold()) throw PreconditionError("matching_system: not a valid manifold triangulation");
    return matching_system(t, compute_skeleton(t));
}

/// Non-negative, satisfies the matching equations, and at most one quad type per tetrahedron.
inline bool is_admissible(const Triangulation& t, const MatchingSystem& m, const NormalVector& x)
{
    if (x.size() != 7 * t.size())
        throw PreconditionError("is_admissible: vector length " + std::to_string(x.size()) +
                                " does not match 7n = " + std::to_string(7 * t.size()));
    for (const auto& c : x.coords())
        if (c < 0) return false;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (x.quad_type(i) == -2) return false;
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        if (m.evaluate(r, x.coords()) != 0) return false;
    return true;
}

inline bool is_admissible(const Triangulation& t, const NormalVector& x)
{
    return is_admissible(t, matching_system(t), x);
}

/// Number of arcs on face f of tet i that cut off corner v.
inline Integer arc_count(const NormalVector& x, std::size_t i, int f, int v)
{
    return x.tri(i, v) + x.quad(i, separation(v, f));
}

/// Intersections of the surface with local edge e of tet i.
inline Integer edge_weight_local(const NormalVector& x, std::size_t i, int e)
{
    const int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
    const int s = separation(a, b);
    Integer w = x.tri(i, a) + x.tri(i, b);
    for (int q = 0; q < 3; ++q)
        if (q != s) w += x.quad(i, q);
    return w;
}

/// Canonical link vector of a vertex class: t = 1 at each of its corners.
inline NormalVector vertex_link(const Skeleton& sk, std::size_t tets, std::size_t vertex_class)
{
    NormalVector x(tets);
    for (const auto& c : sk.vertices.at(vertex_class)) x.tri(c.tet, c.vertex) += 1;
    return x;
}

// ---------------------------------------------------------------------------
// Piece complex

enum class PieceKind { triangle, quad };

struct Piece {
    std::size_t tet;
    PieceKind kind;
    int type;         // vertex for triangles, separation for quads
    std::size_t copy; // triangles: 0 is nearest the vertex; quads: 0 is nearest the side holding vertex 0
};

/// A face crossing: one side, or two sides across an interior face.
struct Arc {
    std::size_t piece_a;
    std::optional<std::size_t> piece_b;
    int sign_a = 1, sign_b = 1;  // transverse-orientation comparison signs
};

/// Explicit cell structure of a normal surface: pieces (2-cells), arcs
/// (1-cells) and edge intersection points (0-cells).
struct PieceComplex {
    std::vector<Piece> pieces;
    std::vector<Arc> arcs;
    std::size_t points = 0;
    std::vector<Integer> edge_weights;  // per edge class
    std::size_t boundary_arcs = 0;

    long long euler() const
    {
        return static_cast<long long>(points) - static_cast<long long>(arcs.size()) +
               static_cast<long long>(pieces.size());
    }
};

/// Guard on explicit realisation; the piece complex allocates per piece.
inline constexpr std::size_t kMaxPieces = 20'000'000;

namespace detail {

struct PieceIndex {
    // first piece id for (tet, kind/type)
    std::vector<std::array<std::size_t, 7>> base;
    std::vector<std::array<std::size_t, 7>> count;

    std::size_t triangle(std::size_t tet, int v, std::size_t copy) const { return base[tet][v] + copy; }
    std::size_t quad(std::size_t tet, int s, std::size_t copy) const { return base[tet][4 + s] + copy; }
};

inline std::size_t to_size(const Integer& x)
{
    if (x < 0 || x > kMaxPieces) throw PreconditionError("coordinate too large to realise as a piece complex");
    return static_cast<std::size_t>(x);
}

/// Piece meeting face f of tet i in the m-th arc (from the corner) cutting off v,
/// together with its transverse-orientation sign at that arc.
inline std::pair<std::size_t, int> piece_at_arc(const PieceIndex& idx, std::size_t i, int f, int v, std::size_t m)
{
    const std::size_t t = idx.count[i][v];
    if (m < t) return {idx.triangle(i, v, m), 1};
    const int s = separation(v, f);
    const std::size_t q = idx.count[i][4 + s];
    const std::size_t p = m - t;
    const bool v_on_reference_side = (v == 0 || f == 0);
    const std::size_t copy = v_on_reference_side ? p : q - 1 - p;
    return {idx.quad(i, s, copy), v_on_reference_side ? 1 : -1};
}

} // namespace detail

inline PieceComplex build_piece_complex(const Triangulation& t, const Skeleton& sk, const MatchingSystem& m,
                                        const NormalVector& x)
{
    if (!is_admissible(t, m, x)) throw PreconditionError("build_piece_complex: vector is not admissible");
    const std::size_t n = t.size();
    PieceComplex pc;
    detail::PieceIndex idx;
    idx.base.resize(n);
    idx.count.resize(n);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < 7; ++c) {
            idx.base[i][c] = total;
            idx.count[i][c] = detail::to_size(x[7 * i + c]);
            total += idx.count[i][c];
            if (total > kMaxPieces) throw PreconditionError("surface too large to realise as a piece complex");
        }
    pc.pieces.reserve(total);
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 7; ++c)
            for (std::size_t k = 0; k < idx.count[i][c]; ++k)
                pc.pieces.push_back(c < 4 ? Piece{i, PieceKind::triangle, c, k} : Piece{i, PieceKind::quad, c - 4, k});

    for (const auto& cls : sk.faces) {
        const auto [i, f] = cls.rep;
        for (int v = 0; v < 4; ++v) {
            if (v == f) continue;
            const std::size_t count = detail::to_size(arc_count(x, i, f, v));
            for (std::size_t k = 0; k < count; ++k) {
                auto [pa, sa] = detail::piece_at_arc(idx, i, f, v, k);
                Arc arc{pa, std::nullopt, sa, 1};
                if (cls.other) {
                    const auto [j, g] = *cls.other;
                    const int w = t.adjacent(i, f)->perm[v];
                    auto [pb, sb] = detail::piece_at_arc(idx, j, g, w, k);
                    arc.piece_b = pb;
                    arc.sign_b = sb;
                } else {
                    ++pc.boundary_arcs;
                }
                pc.arcs.push_back(arc);
            }
        }
    }

    pc.edge_weights.resize(sk.edges.size());
    for (std::size_t e = 0; e < sk.edges.size(); ++e) {
        const auto& rep = sk.edges[e].front();
        pc.edge_weights[e] = edge_weight_local(x, rep.tet, rep.edge);
        for (const auto& emb : sk.edges[e])
            if (edge_weight_local(x, emb.tet, emb.edge) != pc.edge_weights[e])
                throw std::logic_error("edge weight disagrees across edge class " + std::to_string(e));
        pc.points += detail::to_size(pc.edge_weights[e]);
    }
    return pc;
}

/// Euler characteristic from coordinates alone: each piece contributes
/// 1 - sum(1/arc sharing) + sum(1/edge degree) over its arcs and corners.
inline boost::multiprecision::cpp_rational euler_by_weights(const Triangulation& t, const Skeleton& sk,
                                                            const NormalVector& x)
{
    using Q = boost::multiprecision::cpp_rational;
    Q chi = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto share = [&](int f) { return t.adjacent(i, f) ? Q(1, 2) : Q(1); };
        auto corner = [&](int a, int b) { return Q(1, static_cast<long long>(sk.degree(sk.edge_of[i][edge_index(a, b)]))); };
        for (int v = 0; v < 4; ++v) {
            if (x.tri(i, v) == 0) continue;
            Q c = 1;
            for (int f = 0; f < 4; ++f)
                if (f != v) c -= share(f);
            for (int w = 0; w < 4; ++w)
                if (w != v) c += corner(v, w);
            chi += c * Q(x.tri(i, v));
        }
        for (int s = 0; s < 3; ++s) {
            if (x.quad(i, s) == 0) continue;
            Q c = 1;
            for (int f = 0; f < 4; ++f) c -= share(f);
            for (int e = 0; e < 6; ++e)
                if (separation(kEdgeVertices[e][0], kEdgeVertices[e][1]) != s)
                    c += corner(kEdgeVertices[e][0], kEdgeVertices[e][1]);
            chi += c * Q(x.quad(i, s));
        }
    }
    return chi;
}

/// Integer Euler characteristic from the weight formula (throws if the
/// weighted sum is not integral, which only a non-surface vector can cause).
inline long long euler_integer(const Triangulation& t, const Skeleton& sk, const NormalVector& x)
{
    auto q = euler_by_weights(t, sk, x);
    if (denominator(q) != 1) throw std::logic_error("non-integral Euler characteristic");
    return static_cast<long long>(numerator(q));
}

// ---------------------------------------------------------------------------
// Classification

enum class SurfaceKind { sphere, disk, other_closed, other_with_boundary, empty };

inline const char* to_string(SurfaceKind k)
{
    switch (k) {
    case SurfaceKind::sphere: return "sphere";
    case SurfaceKind::disk: return "disk";
    case SurfaceKind::other_closed: return "other-closed";
    case SurfaceKind::other_with_boundary: return "other-with-boundary";
    default: return "empty";
    }
}

struct SurfaceClass {
    SurfaceKind kind = SurfaceKind::empty;
    bool connected = false;
    bool closed = true;
    bool orientable = true;
    bool vertex_linking = false;
    long long euler = 0;
    std::size_t component_count = 0;
};

/// Everything derived from one piece-complex realisation.
struct SurfaceAnalysis {
    SurfaceClass cls;
    std::vector<NormalVector> components;  // sorted, each connected
};

inline SurfaceAnalysis analyse_surface(const Triangulation& t, const Skeleton& sk, const MatchingSystem& m,
                                       const NormalVector& x)
{
    const PieceComplex pc = build_piece_complex(t, sk, m, x);
    SurfaceAnalysis out;
    auto& c = out.cls;
    c.euler = pc.euler();
    c.closed = pc.boundary_arcs == 0;
    c.vertex_linking = !x.has_quads();

    // Transverse orientation: parity(a) ^ parity(b) must equal [sign_a != sign_b].
    UnionFind uf(pc.pieces.size());
    bool two_sided = true;
    for (const auto& arc : pc.arcs)
        if (arc.piece_b && !uf.unite(arc.piece_a, *arc.piece_b, arc.sign_a != arc.sign_b ? 1 : 0))
            two_sided = false;
    c.orientable = two_sided;

    std::size_t ncomp = 0;
    auto id = dense_class_ids(uf, pc.pieces.size(), ncomp);
    c.component_count = ncomp;
    c.connected = ncomp == 1;
    std::vector<NormalVector> comps(ncomp, NormalVector(t.size()));
    for (std::size_t p = 0; p < pc.pieces.size(); ++p) {
        const auto& pc_piece = pc.pieces[p];
        auto& v = comps[id[p]];
        if (pc_piece.kind == PieceKind::triangle) v.tri(pc_piece.tet, pc_piece.type) += 1;
        else v.quad(pc_piece.tet, pc_piece.type) += 1;
    }
    std::sort(comps.begin(), comps.end());
    out.components = std::move(comps);

    if (ncomp == 0) c.kind = SurfaceKind::empty;
    else if (c.connected && c.closed && c.euler == 2) c.kind = SurfaceKind::sphere;
    else if (c.connected && !c.closed && c.euler == 1) c.kind = SurfaceKind::disk;
    else c.kind = c.closed ? SurfaceKind::other_closed : SurfaceKind::other_with_boundary;

    if (c.connected && c.closed && c.euler == 2 && !c.orientable)
        throw std::logic_error("transverse orientation contradiction on a sphere");
    return out;
}

/// Precomputed context for repeated surface queries on one triangulation.
class SurfaceContext {
public:
    explicit SurfaceContext(const Triangulation& t)
        : tri_(&t), skeleton_(compute_skeleton(t)), matching_(matching_system(t, skeleton_))
    {
        if (!validate(t).is_manifold()) throw PreconditionError("not a valid manifold triangulation");
    }

    const Triangulation& triangulation() const { return *tri_; }
    const Skeleton& skeleton() const { return skeleton_; }
    const MatchingSystem& matching() const { return matching_; }

    bool admissible(const NormalVector& x) const { return is_admissible(*tri_, matching_, x); }
    SurfaceAnalysis analyse(const NormalVector& x) const { return analyse_surface(*tri_, skeleton_, matching_, x); }
    SurfaceClass classify(const NormalVector& x) const { return analyse(x).cls; }
    std::vector<NormalVector> components(const NormalVector& x) const { return analyse(x).components; }
    long long euler(const NormalVector& x) const { return build_piece_complex(*tri_, skeleton_, matching_, x).euler(); }

private:
    const Triangulation* tri_;
    Skeleton skeleton_;
    MatchingSystem matching_;
};

inline SurfaceClass classify(const Triangulation& t, const NormalVector& x) { return SurfaceContext(t).classify(x); }
inline std::vector<NormalVector> components(const Triangulation& t, const NormalVector& x)
{
    return SurfaceContext(t).components(x);
}

/// The one place deciding "non-trivial normal 2-sphere": a connected closed
/// surface of Euler characteristic 2 that carries a quadrilateral.
inline bool is_nontrivial_sphere(const SurfaceClass& c)
{
    return c.kind == SurfaceKind::sphere && c.connected && !c.vertex_linking;
}

/// A connected one-sided closed surface with Euler characteristic 1 (a
/// projective plane); its double is a normal sphere.
inline bool is_projective_plane(const SurfaceClass& c)
{
    return c.connected && c.closed && c.euler == 1 && !c.orientable;
}

} // namespace nsurf
