#pragma once

// Tetrahedral gluing complexes and their text format.
//
// Conventions (frozen; every other module depends on them):
//   * face f of a tetrahedron is the face opposite vertex f;
//   * a gluing of face f of tet i to tet j carries a permutation p of vertex
//     labels, and the image face is p(f);
//   * with every tetrahedron positively oriented, a gluing respects
//     orientation iff p is odd.

#include "nsurf/error.hpp"
#include "nsurf/perm.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace nsurf {

struct Gluing {
    std::size_t tet;
    Perm4 perm;
    bool operator==(const Gluing&) const = default;
};

/// Identifies one face of one tetrahedron.
struct FaceRef {
    std::size_t tet;
    int face;
    auto operator<=>(const FaceRef&) const = default;
};

class Triangulation {
public:
    Triangulation() = default;
    explicit Triangulation(std::size_t n) : adj_(n) {}

    std::size_t size() const noexcept { return adj_.size(); }
    bool empty() const noexcept { return adj_.empty(); }

    std::size_t add_tetrahedron()
    {
        adj_.emplace_back();
        return adj_.size() - 1;
    }

    const std::optional<Gluing>& adjacent(std::size_t tet, int face) const
    {
        return adj_.at(tet)[static_cast<std::size_t>(face)];
    }

    /// Glues face f of tet i to tet j via p, setting both directions.
    void join(std::size_t i, int f, std::size_t j, Perm4 p)
    {
        if (i >= size() || j >= size())
            throw InvolutionError("tetrahedron index out of range");
        int g = p[f];
        if (i == j && f == g)
            throw InvolutionError("face (" + std::to_string(i) + "," + std::to_string(f) +
                                  ") glued to itself");
        auto& a = adj_[i][static_cast<std::size_t>(f)];
        auto& b = adj_[j][static_cast<std::size_t>(g)];
        if (a || b)
            throw InvolutionError("face (" + std::to_string(i) + "," + std::to_string(f) +
                                  ") or (" + std::to_string(j) + "," + std::to_string(g) +
                                  ") already glued");
        a = Gluing{j, p};
        b = Gluing{i, p.inverse()};
    }

    void unjoin(std::size_t i, int f)
    {
        auto& a = adj_.at(i)[static_cast<std::size_t>(f)];
        if (!a) return;
        adj_[a->tet][static_cast<std::size_t>(a->perm[f])].reset();
        a.reset();
    }

    bool is_closed() const
    {
        for (const auto& t : adj_)
            for (const auto& g : t)
                if (!g) return false;
        return true;
    }

    std::size_t boundary_face_count() const
    {
        std::size_t c = 0;
        for (const auto& t : adj_)
            for (const auto& g : t)
                if (!g) ++c;
        return c;
    }

    bool operator==(const Triangulation&) const = default;

private:
    std::vector<std::array<std::optional<Gluing>, 4>> adj_;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string face_name(std::size_t t, int f)
{
    return "(" + std::to_string(t) + "," + std::to_string(f) + ")";
}

} // namespace detail

/// Parses the gluing-file format:
///
///     # comment
///     tets <n>
///     <i> <f> : <j> <g> <p0p1p2p3>
///
/// Each pair may be listed from one or both sides; when both are listed they
/// must be mutually inverse. Unlisted faces are boundary.
inline Triangulation parse_triangulation(std::string_view text)
{
    std::optional<Triangulation> tri;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        std::istringstream in{std::string(line)};
        if (!tri) {
            std::string kw;
            long long n = -1;
            std::string extra;
            if (!(in >> kw >> n) || kw != "tets" || n < 0 || (in >> extra))
                throw ParseError(lineno, "expected 'tets <n>'");
            tri.emplace(static_cast<std::size_t>(n));
            continue;
        }

        long long i = -1, f = -1, j = -1, g = -1;
        std::string colon, perm, extra;
        if (!(in >> i >> f >> colon >> j >> g >> perm) || colon != ":" || (in >> extra))
            throw ParseError(lineno, "expected '<i> <f> : <j> <g> <perm>'");
        const auto n = static_cast<long long>(tri->size());
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw ParseError(lineno, "tetrahedron index out of range");
        if (f < 0 || f > 3 || g < 0 || g > 3) throw ParseError(lineno, "face index out of range");
        auto p = Perm4::parse(perm);
        if (!p) throw ParseError(lineno, "invalid permutation '" + perm + "'");
        if ((*p)[static_cast<int>(f)] != g)
            throw ParseError(lineno, "face " + std::to_string(g) + " is not p(" +
                                         std::to_string(f) + ") for permutation " + perm);

        const auto ti = static_cast<std::size_t>(i), tj = static_cast<std::size_t>(j);
        const int fi = static_cast<int>(f), gj = static_cast<int>(g);
        if (ti == tj && fi == gj)
            throw InvolutionError("line " + std::to_string(lineno) + ": face " +
                                  detail::face_name(ti, fi) + " glued to itself");
        const auto& here = tri->adjacent(ti, fi);
        const auto& there = tri->adjacent(tj, gj);
        if (here || there) {
            if (here && *here == Gluing{tj, *p} && there && *there == Gluing{ti, p->inverse()})
                continue; // the reverse listing of an existing pair
            FaceRef a = here ? FaceRef{ti, fi} : FaceRef{tj, gj};
            const auto& ex = here ? *here : *there;
            FaceRef b{ex.tet, ex.perm[a.face]};
            if (b < a) std::swap(a, b);
            throw InvolutionError("line " + std::to_string(lineno) + ": gluing " +
                                  detail::face_name(ti, fi) + " -> " + detail::face_name(tj, gj) +
                                  " conflicts with the existing gluing of faces " +
                                  detail::face_name(a.tet, a.face) + "/" +
                                  detail::face_name(b.tet, b.face));
        }
        tri->join(ti, fi, tj, *p);
    }
    if (!tri) throw ParseError(lineno, "missing 'tets <n>' header");
    return *tri;
}

/// Canonical text form: header, then one line per glued pair from its
/// lexicographically smaller side, sorted by (i, f).
inline std::string serialize(const Triangulation& t)
{
    std::string out = "tets " + std::to_string(t.size()) + "\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.adjacent(i, f);
            if (!g) continue;
            FaceRef self{i, f}, other{g->tet, g->perm[f]};
            if (other < self) continue;
            out += std::to_string(i) + " " + std::to_string(f) + " : " + std::to_string(g->tet) +
                   " " + std::to_string(g->perm[f]) + " " + g->perm.str() + "\n";
        }
    }
    return out;
}

/// Renumbers tetrahedra: old tet i becomes new tet order[i].
inline Triangulation relabel(const Triangulation& t, const std::vector<std::size_t>& order)
{
    Triangulation r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.adjacent(i, f);
            if (!g) continue;
            FaceRef self{i, f}, other{g->tet, g->perm[f]};
            if (other < self) continue;
            r.join(order[i], f, order[g->tet], g->perm);
        }
    return r;
}

/// Connected components by face adjacency; each list is ascending.
inline std::vector<std::vector<std::size_t>> tetrahedron_components(const Triangulation& t)
{
    std::vector<int> comp(t.size(), -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < t.size(); ++s) {
        if (comp[s] >= 0) continue;
        const int c = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<std::size_t> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            auto i = stack.back();
            stack.pop_back();
            out.back().push_back(i);
            for (int f = 0; f < 4; ++f)
                if (const auto& g = t.adjacent(i, f); g && comp[g->tet] < 0) {
                    comp[g->tet] = c;
                    stack.push_back(g->tet);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

/// The sub-triangulation on the listed tetrahedra (renumbered in list order).
/// Gluings to tetrahedra outside the list are dropped.
inline Triangulation induced(const Triangulation& t, const std::vector<std::size_t>& tets)
{
    std::vector<std::ptrdiff_t> index(t.size(), -1);
    for (std::size_t k = 0; k < tets.size(); ++k) index[tets[k]] = static_cast<std::ptrdiff_t>(k);
    Triangulation r(tets.size());
    for (std::size_t k = 0; k < tets.size(); ++k)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.adjacent(tets[k], f);
            if (!g || index[g->tet] < 0) continue;
            const auto other = static_cast<std::size_t>(index[g->tet]);
            if (FaceRef{other, g->perm[f]} < FaceRef{k, f}) continue;
            r.join(k, f, other, g->perm);
        }
    return r;
}

} // namespace nsurf
