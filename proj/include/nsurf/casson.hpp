#pragma once

// Decomposition into irreducible pieces: find a non-trivial normal sphere,
// crush it, repeat on every piece until each is certified sphere-free.

#include "nsurf/crush.hpp"
#include "nsurf/sphere_search.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace nsurf {

class DecompositionError : public Error {
public:
    using Error::Error;
};

enum class SearchMode { restricted, full };

inline const char* to_string(SearchMode m) { return m == SearchMode::restricted ? "restricted" : "full"; }

struct CrushStep {
    std::size_t item = 0;                    // worklist item that was crushed
    std::optional<std::size_t> parent_step;  // step that produced the item
    SearchMode mode = SearchMode::restricted;
    SphereCandidate sphere;
    CrushReport report;
    std::vector<CrushFailure> failed_attempts;
    std::size_t restricted_enumerations = 0;
    bool restricted_found = false;
    bool full_enumeration_used = false;
    std::vector<std::size_t> child_items;
};

struct DecompositionLeaf {
    std::size_t item = 0;
    std::optional<std::size_t> parent_step;
    Triangulation triangulation;
    HomologyGroup h1;
};

struct DecompositionReport {
    Triangulation root;
    HomologyGroup root_h1;
    std::vector<CrushStep> steps;
    std::vector<DecompositionLeaf> leaves;
    std::size_t s2xs1_factors = 0;
    std::size_t dropped_trivial = 0;
    std::vector<std::size_t> total_tets_after_step;  // strictly decreasing, starts below root size

    HomologyGroup ledger_sum() const
    {
        HomologyGroup g{s2xs1_factors, {}};
        for (const auto& l : leaves) g = direct_sum(g, l.h1);
        return g;
    }
    bool ledger_balanced() const { return ledger_sum() == root_h1; }
};

struct DecomposeOptions {
    bool assume_minimal = false;  // recorded only; never changes the search
    unsigned threads = 0;
};

inline DecompositionReport decompose(const Triangulation& root, DecomposeOptions opt = {})
{
    require_closed_orientable(root, "decompose");
    DecompositionReport rep;
    rep.root = root;
    rep.root_h1 = h1(root);

    struct Item {
        Triangulation tri;
        std::optional<std::size_t> parent_step;
    };
    std::vector<Item> items{{root, std::nullopt}};
    std::deque<std::size_t> pending{0};
    std::size_t total_tets = root.size();

    while (!pending.empty()) {
        const std::size_t id = pending.front();
        pending.pop_front();
        const Triangulation tri = items[id].tri;
        if (tri.empty()) {
            ++rep.dropped_trivial;
            continue;
        }

        CrushStep step;
        step.item = id;
        step.parent_step = items[id].parent_step;
        auto restricted = restricted_sphere_search(tri, RestrictedSearchOptions{2, opt.threads});
        step.restricted_enumerations = restricted.stats.cone_enumerations;
        step.restricted_found = restricted.found.has_value();

        std::vector<std::pair<SphereCandidate, SearchMode>> candidates;
        if (restricted.found) candidates.emplace_back(*restricted.found, SearchMode::restricted);
        bool full_loaded = false;
        std::optional<CrushReport> success;
        for (std::size_t c = 0;; ++c) {
            if (c == candidates.size()) {
                if (full_loaded) break;
                full_loaded = true;
                step.full_enumeration_used = true;
                for (auto& s : full_sphere_candidates(tri)) {
                    if (restricted.found && s.sphere == restricted.found->sphere) continue;
                    candidates.emplace_back(std::move(s), SearchMode::full);
                }
                if (c == candidates.size()) break;
            }
            auto outcome = crush_sphere(tri, candidates[c].first.sphere);
            if (auto* fail = std::get_if<CrushFailure>(&outcome)) {
                step.failed_attempts.push_back(*fail);
                continue;
            }
            step.sphere = candidates[c].first;
            step.mode = candidates[c].second;
            success = std::move(std::get<CrushReport>(outcome));
            break;
        }

        if (!success) {
            if (!step.failed_attempts.empty())
                throw DecompositionError("every candidate sphere failed to crush on a piece with " +
                                         std::to_string(tri.size()) + " tetrahedra (first defect: " +
                                         step.failed_attempts.front().defect + ")");
            rep.leaves.push_back({id, items[id].parent_step, tri, h1(tri)});
            continue;
        }

        const std::size_t step_id = rep.steps.size();
        if (success->output_tets() >= tri.size())
            throw std::logic_error("crush did not reduce the tetrahedron count");
        total_tets -= tri.size() - success->output_tets();
        rep.total_tets_after_step.push_back(total_tets);
        if (!success->separating) ++rep.s2xs1_factors;
        for (const auto& out : success->outputs) {
            step.child_items.push_back(items.size());
            pending.push_back(items.size());
            items.push_back({out, step_id});
        }
        step.report = std::move(*success);
        rep.steps.push_back(std::move(step));
    }
    return rep;
}

enum class Reducibility { reducible, no_restricted_sphere, not_applicable };

inline const char* to_string(Reducibility r)
{
    switch (r) {
    case Reducibility::reducible: return "reducible";
    case Reducibility::no_restricted_sphere: return "no-restricted-sphere";
    default: return "not-applicable";
    }
}

struct ReducibilityVerdict {
    Reducibility verdict = Reducibility::not_applicable;
    std::optional<SphereCandidate> certificate;
    SearchStats stats;
    std::string assumption;
};

/// Smallest tetrahedron count at which the two-quad-tetrahedra bound applies
/// to minimal triangulations is one more than this.
inline constexpr std::size_t kRestrictedBoundThreshold = 4;

/// Reducibility check for a triangulation the caller asserts is minimal.
/// Runs the restricted search with k = 2 (3n + 9n(n-1)/2 cone enumerations).
inline ReducibilityVerdict check_reducible_minimal(const Triangulation& t, unsigned threads = 0)
{
    require_closed_orientable(t, "check_reducible_minimal");
    ReducibilityVerdict v;
    v.assumption = "the triangulation is assumed minimal (supplied by the caller, not verified)";
    if (t.size() <= kRestrictedBoundThreshold) {
        v.verdict = Reducibility::not_applicable;
        v.assumption += "; n <= 4, so the two-quad-tetrahedra bound does not apply: use a full search";
        return v;
    }
    auto r = restricted_sphere_search(t, RestrictedSearchOptions{2, threads});
    v.stats = r.stats;
    if (r.found) {
        v.verdict = Reducibility::reducible;
        v.certificate = std::move(r.found);
    } else {
        v.verdict = Reducibility::no_restricted_sphere;
        v.assumption += "; under minimality, no sphere with quadrilaterals in at most 2 tetrahedra means irreducible";
    }
    return v;
}

} // namespace nsurf
