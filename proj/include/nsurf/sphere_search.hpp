#pragma once

// Searches for connected non-trivial normal 2-spheres.
//
// The restricted search walks every quad support pattern of at most k
// tetrahedra (one separation each). Fixing the pattern makes the solution set
// a single convex cone with 4n + |pattern| columns and at most 6n rows, so
// each pattern costs one plain double description run; with k fixed the
// number of runs is polynomial in n (3n + 9n(n-1)/2 for k = 2).

#include "nsurf/enumeration.hpp"

#include <cstddef>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace nsurf {

/// At most k (tetrahedron, separation) pairs with distinct tetrahedra.
struct QuadSupportPattern {
    std::vector<std::pair<std::size_t, int>> quads;

    std::size_t size() const { return quads.size(); }
    bool contains_support_of(const NormalVector& x) const
    {
        for (std::size_t i = 0; i < x.tets(); ++i) {
            int s = x.quad_type(i);
            if (s == -1) continue;
            bool ok = false;
            for (auto [tet, sep] : quads)
                if (tet == i && sep == s) ok = true;
            if (!ok) return false;
        }
        return true;
    }
    std::string str() const
    {
        std::string s = "{";
        for (std::size_t k = 0; k < quads.size(); ++k) {
            if (k) s += ", ";
            s += "q(" + std::to_string(quads[k].first) + "," + kSeparationNames[quads[k].second] + ")";
        }
        return s + "}";
    }
    bool operator==(const QuadSupportPattern&) const = default;
};

/// Canonical pattern order: by size, then ascending tetrahedra, then separations.
inline std::vector<QuadSupportPattern> quad_support_patterns(std::size_t n, std::size_t k)
{
    std::vector<QuadSupportPattern> out;
    std::vector<std::size_t> tets;
    for (std::size_t size = 1; size <= k && size <= n; ++size) {
        auto choose = [&](auto&& self, std::size_t start) -> void {
            if (tets.size() == size) {
                std::size_t combos = 1;
                for (std::size_t i = 0; i < size; ++i) combos *= 3;
                for (std::size_t code = 0; code < combos; ++code) {
                    QuadSupportPattern p;
                    std::size_t c = code;
                    std::vector<int> seps(size);
                    for (std::size_t i = size; i-- > 0;) {
                        seps[i] = static_cast<int>(c % 3);
                        c /= 3;
                    }
                    for (std::size_t i = 0; i < size; ++i) p.quads.emplace_back(tets[i], seps[i]);
                    out.push_back(std::move(p));
                }
                return;
            }
            for (std::size_t t = start; t < n; ++t) {
                tets.push_back(t);
                self(self, t + 1);
                tets.pop_back();
            }
        };
        choose(choose, 0);
    }
    return out;
}

/// How a reported sphere was obtained from the enumerated rays.
enum class SphereOrigin { vertex_ray, doubled_projective_plane, pair_sum };

inline const char* to_string(SphereOrigin o)
{
    switch (o) {
    case SphereOrigin::vertex_ray: return "vertex-ray";
    case SphereOrigin::doubled_projective_plane: return "doubled-projective-plane";
    default: return "pair-sum";
    }
}

struct SphereCandidate {
    NormalVector sphere;
    SurfaceClass cls;
    SphereOrigin origin = SphereOrigin::vertex_ray;
    std::optional<QuadSupportPattern> pattern;  // restricted search only
};

struct SearchStats {
    std::size_t cone_enumerations = 0;
    std::size_t max_rows = 0;
    std::size_t max_columns = 0;
    std::size_t pair_sum_supplements = 0;  // patterns where only a ray pair sum gave a sphere
};

struct SphereSearchResult {
    std::optional<SphereCandidate> found;
    SearchStats stats;
};

namespace detail {

/// A sphere read off one connected surface: itself, or the double of a
/// one-sided projective plane.
inline std::optional<SphereCandidate> sphere_from(const SurfaceContext& ctx, const NormalVector& x)
{
    auto a = ctx.analyse(x);
    if (is_nontrivial_sphere(a.cls)) return SphereCandidate{x, a.cls, SphereOrigin::vertex_ray, std::nullopt};
    if (is_projective_plane(a.cls) && !a.cls.vertex_linking) {
        auto doubled = x.scaled(2);
        auto d = ctx.analyse(doubled);
        if (is_nontrivial_sphere(d.cls))
            return SphereCandidate{std::move(doubled), d.cls, SphereOrigin::doubled_projective_plane, std::nullopt};
    }
    return std::nullopt;
}

struct PatternOutcome {
    std::optional<SphereCandidate> found;
    std::size_t rows = 0, columns = 0;
    bool supplement = false;
};

inline PatternOutcome search_pattern(const SurfaceContext& ctx, const QuadSupportPattern& pattern)
{
    PatternOutcome out;
    const auto& t = ctx.triangulation();
    auto rays = pattern_extreme_rays(t, ctx.matching(), pattern.quads, nullptr, &out.rows);
    out.columns = 4 * t.size() + pattern.size();
    for (const auto& r : rays) {
        if (!r.has_quads()) continue;
        if (auto c = sphere_from(ctx, r)) {
            c->pattern = pattern;
            out.found = std::move(c);
            return out;
        }
    }
    // Supplement: sums of two rays of the same cone with coefficient 1.
    // Euler characteristic is linear in the coordinates, so only pairs whose
    // characteristics add to 2 can give a sphere.
    std::vector<long long> chi(rays.size());
    for (std::size_t a = 0; a < rays.size(); ++a)
        chi[a] = euler_integer(t, ctx.skeleton(), rays[a]);
    for (std::size_t a = 0; a < rays.size(); ++a)
        for (std::size_t b = a; b < rays.size(); ++b) {
            if (!rays[a].has_quads() && !rays[b].has_quads()) continue;
            if (chi[a] + chi[b] != 2) continue;
            auto sum = rays[a] + rays[b];
            auto cls = ctx.classify(sum);
            if (is_nontrivial_sphere(cls)) {
                out.found = SphereCandidate{std::move(sum), cls, SphereOrigin::pair_sum, pattern};
                out.supplement = true;
                return out;
            }
        }
    return out;
}

} // namespace detail

struct RestrictedSearchOptions {
    std::size_t max_quad_tets = 2;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Restricted search over all patterns of at most k quad tetrahedra. Every
/// pattern is enumerated (so the work count is exact); the result is the
/// sphere of the first pattern in canonical order that yields one.
inline SphereSearchResult restricted_sphere_search(const Triangulation& t, RestrictedSearchOptions opt = {})
{
    if (opt.max_quad_tets == 0) throw PreconditionError("restricted_sphere_search: k must be positive");
    require_closed_orientable(t, "restricted_sphere_search");
    SphereSearchResult result;
    if (t.empty()) return result;
    const SurfaceContext ctx(t);
    const auto patterns = quad_support_patterns(t.size(), opt.max_quad_tets);

    std::vector<detail::PatternOutcome> outcomes(patterns.size());
    unsigned threads = opt.threads ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, patterns.size()));
    if (threads <= 1) {
        for (std::size_t p = 0; p < patterns.size(); ++p) outcomes[p] = detail::search_pattern(ctx, patterns[p]);
    } else {
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < threads; ++w)
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t p = w; p < patterns.size(); p += threads)
                    outcomes[p] = detail::search_pattern(ctx, patterns[p]);
            }));
        for (auto& j : jobs) j.get();
    }

    for (auto& o : outcomes) {
        ++result.stats.cone_enumerations;
        result.stats.max_rows = std::max(result.stats.max_rows, o.rows);
        result.stats.max_columns = std::max(result.stats.max_columns, o.columns);
        if (o.supplement) ++result.stats.pair_sum_supplements;
        if (o.found && !result.found) result.found = std::move(o.found);
    }
    return result;
}

inline SphereSearchResult restricted_sphere_search(const Triangulation& t, std::size_t k)
{
    return restricted_sphere_search(t, RestrictedSearchOptions{k, 0});
}

/// Every connected non-trivial sphere read off the vertex solutions, in
/// canonical order (vertex solutions in order; components of each in order).
inline std::vector<SphereCandidate> full_sphere_candidates(const Triangulation& t)
{
    require_closed_orientable(t, "full_sphere_search");
    std::vector<SphereCandidate> out;
    if (t.empty()) return out;
    const SurfaceContext ctx(t);
    std::set<NormalVector> seen;
    for (const auto& v : vertex_solutions(ctx).vectors) {
        if (!v.has_quads()) continue;
        for (const auto& comp : ctx.components(v)) {
            if (!comp.has_quads()) continue;
            if (auto c = detail::sphere_from(ctx, comp); c && seen.insert(c->sphere).second)
                out.push_back(std::move(*c));
        }
    }
    return out;
}

inline SphereSearchResult full_sphere_search(const Triangulation& t)
{
    SphereSearchResult r;
    auto all = full_sphere_candidates(t);
    if (!all.empty()) r.found = std::move(all.front());
    return r;
}

} // namespace nsurf
