#pragma once

#include "nsurf/double_description.hpp"
#include "nsurf/normal_surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

namespace nsurf {

/// Admissible vertex normal surfaces: primitive, pairwise non-proportional,
/// sorted lexicographically by coordinates.
struct VertexSolutionSet {
    std::vector<NormalVector> vectors;
    DDStats stats;
};

namespace detail {

inline std::vector<SparseRow> to_sparse(const MatchingSystem& m)
{
    std::vector<SparseRow> rows;
    rows.reserve(m.rows.size());
    for (const auto& r : m.rows) {
        SparseRow s;
        for (auto [c, k] : r.terms) s.emplace_back(c, Integer(k));
        rows.push_back(std::move(s));
    }
    return rows;
}

/// Processing order: rows touching only low-numbered columns first.
inline void order_rows(std::vector<SparseRow>& rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const SparseRow& a, const SparseRow& b) {
        auto key = [](const SparseRow& r) { return r.empty() ? std::size_t{0} : r.back().first; };
        return key(a) < key(b);
    });
}

inline SupportFilter quadrilateral_filter(std::size_t tets)
{
    return [tets](const Bits& support) {
        for (std::size_t i = 0; i < tets; ++i) {
            int k = 0;
            for (int s = 0; s < 3; ++s)
                if (support.test(quad_column(i, s))) ++k;
            if (k > 1) return false;
        }
        return true;
    };
}

} // namespace detail

/// Filtered double description over the full 7n-coordinate cone: only
/// candidate rays obeying the quadrilateral condition are ever formed, so the
/// result is the union over quad-type patterns of the extreme rays of each
/// pattern's (convex) sub-cone.
inline VertexSolutionSet vertex_solutions(const SurfaceContext& ctx)
{
    const auto& t = ctx.triangulation();
    VertexSolutionSet out;
    if (t.empty()) return out;
    auto rows = detail::to_sparse(ctx.matching());
    detail::order_rows(rows);
    auto rays = extreme_rays(7 * t.size(), rows, detail::quadrilateral_filter(t.size()), &out.stats);
    out.vectors.reserve(rays.size());
    for (auto& r : rays) out.vectors.emplace_back(std::move(r));
    return out;
}

inline VertexSolutionSet vertex_solutions(const Triangulation& t)
{
    if (!is_orientable(t)) throw PreconditionError("vertex_solutions: triangulation is not orientable");
    return vertex_solutions(SurfaceContext(t));
}

/// Quad choice per tetrahedron: -1 for none, else a separation.
using QuadPattern = std::vector<int>;

/// Extreme rays of one pattern's sub-cone, mapped back to 7n coordinates.
inline std::vector<NormalVector> pattern_extreme_rays(const Triangulation& t, const MatchingSystem& m,
                                                      const std::vector<std::pair<std::size_t, int>>& quads,
                                                      DDStats* stats = nullptr, std::size_t* row_count = nullptr)
{
    const std::size_t n = t.size();
    std::vector<std::ptrdiff_t> local(7 * n, -1);
    std::vector<std::size_t> global;
    for (std::size_t i = 0; i < n; ++i)
        for (int v = 0; v < 4; ++v) {
            local[tri_column(i, v)] = static_cast<std::ptrdiff_t>(global.size());
            global.push_back(tri_column(i, v));
        }
    for (auto [tet, s] : quads) {
        local[quad_column(tet, s)] = static_cast<std::ptrdiff_t>(global.size());
        global.push_back(quad_column(tet, s));
    }
    std::vector<SparseRow> rows;
    for (const auto& r : m.rows) {
        SparseRow s;
        for (auto [c, k] : r.terms)
            if (local[c] >= 0) s.emplace_back(static_cast<std::size_t>(local[c]), Integer(k));
        std::sort(s.begin(), s.end());
        rows.push_back(std::move(s));
    }
    if (row_count) *row_count = rows.size();
    detail::order_rows(rows);
    auto rays = extreme_rays(global.size(), rows, {}, stats);
    std::vector<NormalVector> out;
    out.reserve(rays.size());
    for (const auto& r : rays) {
        NormalVector x(n);
        for (std::size_t c = 0; c < r.size(); ++c) x[global[c]] = r[c];
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Second route to the vertex solutions: a separate double description run
/// for every one of the 4^n quad patterns, merged and deduplicated. Intended
/// for small n, as a cross-check on the filtered single-pass enumeration.
inline VertexSolutionSet vertex_solutions_by_pattern(const Triangulation& t, std::size_t max_tets = 6)
{
    if (t.size() > max_tets)
        throw BudgetExceeded("per-pattern enumeration limited to " + std::to_string(max_tets) + " tetrahedra");
    VertexSolutionSet out;
    if (t.empty()) return out;
    SurfaceContext ctx(t);
    std::set<NormalVector> found;
    QuadPattern pattern(t.size(), -1);
    for (;;) {
        std::vector<std::pair<std::size_t, int>> quads;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (pattern[i] >= 0) quads.emplace_back(i, pattern[i]);
        for (auto& x : pattern_extreme_rays(t, ctx.matching(), quads)) found.insert(std::move(x));
        // odometer over {-1,0,1,2}^n
        std::size_t k = 0;
        while (k < pattern.size() && pattern[k] == 2) pattern[k++] = -1;
        if (k == pattern.size()) break;
        ++pattern[k];
    }
    out.vectors.assign(found.begin(), found.end());
    return out;
}

/// Default work budget for the brute-force scan (search nodes).
inline constexpr double kBruteForceBudget = 1e9;

/// Every admissible vector with all coordinates <= bound, in lexicographic
/// order, found by exhaustive scan (rows are checked as soon as all their
/// columns are fixed; this prunes but never changes the result).
inline std::vector<NormalVector> brute_force_solutions(const Triangulation& t, int bound,
                                                       double budget = kBruteForceBudget)
{
    if (bound < 0) throw PreconditionError("brute_force_solutions: bound must be non-negative");
    const std::size_t n = t.size();
    const double estimate = std::pow(static_cast<double>(bound + 1), 4.0 * static_cast<double>(n)) *
                            std::pow(1.0 + 3.0 * bound, static_cast<double>(n));
    if (estimate > budget)
        throw BudgetExceeded("brute force scan of " + std::to_string(estimate) + " candidates exceeds budget");

    const MatchingSystem m = matching_system(t);
    std::vector<std::vector<std::size_t>> rows_ready(n);
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        std::size_t last = 0;
        for (auto [c, k] : m.rows[r].terms) last = std::max(last, c / 7);
        if (!m.rows[r].terms.empty()) rows_ready[last].push_back(r);
    }

    // Per-tetrahedron options in lexicographic order.
    std::vector<std::array<int, 7>> options;
    std::array<int, 7> cur{};
    for (int a = 0; a <= bound; ++a)
        for (int b = 0; b <= bound; ++b)
            for (int c = 0; c <= bound; ++c)
                for (int d = 0; d <= bound; ++d)
                    for (int q0 = 0; q0 <= bound; ++q0)
                        for (int q1 = 0; q1 <= bound; ++q1)
                            for (int q2 = 0; q2 <= bound; ++q2) {
                                if ((q0 > 0) + (q1 > 0) + (q2 > 0) > 1) continue;
                                cur = {a, b, c, d, q0, q1, q2};
                                options.push_back(cur);
                            }

    std::vector<int> x(7 * n, 0);
    std::vector<NormalVector> out;
    auto row_ok = [&](std::size_t r) {
        long long s = 0;
        for (auto [c, k] : m.rows[r].terms) s += static_cast<long long>(k) * x[c];
        return s == 0;
    };
    auto rec = [&](auto&& self, std::size_t tet) -> void {
        if (tet == n) {
            NormalVector v(n);
            for (std::size_t c = 0; c < x.size(); ++c) v[c] = x[c];
            out.push_back(std::move(v));
            return;
        }
        for (const auto& o : options) {
            std::copy(o.begin(), o.end(), x.begin() + static_cast<std::ptrdiff_t>(7 * tet));
            bool ok = true;
            for (auto r : rows_ready[tet])
                if (!row_ok(r)) {
                    ok = false;
                    break;
                }
            if (ok) self(self, tet + 1);
        }
        std::fill(x.begin() + static_cast<std::ptrdiff_t>(7 * tet), x.begin() + static_cast<std::ptrdiff_t>(7 * tet + 7), 0);
    };
    rec(rec, 0);
    return out;
}

/// Rank of the given columns of the matching matrix (fraction-free elimination).
inline std::size_t column_rank(const MatchingSystem& m, const std::vector<std::size_t>& cols)
{
    std::vector<std::vector<Integer>> a;
    for (const auto& r : m.rows) {
        std::vector<Integer> row(cols.size(), Integer(0));
        bool any = false;
        for (auto [c, k] : r.terms) {
            auto it = std::lower_bound(cols.begin(), cols.end(), c);
            if (it != cols.end() && *it == c) {
                row[static_cast<std::size_t>(it - cols.begin())] = k;
                any = true;
            }
        }
        if (any) a.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols.size() && rank < a.size(); ++c) {
        std::size_t p = rank;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][c] == 0) continue;
            const Integer x = a[rank][c], y = a[r][c];
            for (std::size_t k = c; k < cols.size(); ++k) a[r][k] = a[r][k] * x - a[rank][k] * y;
            make_primitive(a[r]);
        }
        ++rank;
    }
    return rank;
}

/// Rank test: a nonzero admissible x spans an extreme ray of its quad
/// pattern's sub-cone iff the matching columns on its support have nullity 1.
inline bool is_extreme_in_support(const MatchingSystem& m, const NormalVector& x)
{
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < x.size(); ++c)
        if (x[c] != 0) support.push_back(c);
    if (support.empty()) return false;
    return support.size() - column_rank(m, support) == 1;
}

/// Extreme members of a solution list, canonically scaled and deduplicated.
inline std::vector<NormalVector> extreme_filter(const Triangulation& t, const std::vector<NormalVector>& xs)
{
    const MatchingSystem m = matching_system(t);
    std::set<NormalVector> out;
    for (const auto& x : xs)
        if (is_extreme_in_support(m, x)) {
            auto c = x.coords();
            make_primitive(c);
            out.insert(NormalVector(std::move(c)));
        }
    return {out.begin(), out.end()};
}

} // namespace nsurf
