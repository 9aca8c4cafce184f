#pragma once

// Double description method for the extreme rays of
//     { x in R^d : x >= 0, A x = 0 }
// in exact integer arithmetic, with an optional support filter that discards
// candidate rays whose support is not allowed (used for the quadrilateral
// condition). Starting from the orthant's unit rays, each equation is
// intersected in turn; adjacency of rays is decided combinatorially from
// their zero sets after a cheap rank-based prefilter.

#include "nsurf/integer.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace nsurf {

/// Fixed-width bit set sized at runtime.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const noexcept { return n_; }
    void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    Bits operator&(const Bits& o) const
    {
        Bits r(n_);
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
        return r;
    }

    /// Complement within the first size() bits.
    Bits operator~() const
    {
        Bits r(n_);
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = ~w_[k];
        if (n_ % 64) r.w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
        return r;
    }

    bool subset_of(const Bits& o) const
    {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    bool operator==(const Bits&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

struct DDStats {
    std::size_t equations = 0;
    std::size_t max_rays = 0;
    std::size_t candidate_pairs = 0;
};

/// Support predicate: receives the support of a candidate ray.
using SupportFilter = std::function<bool(const Bits&)>;

namespace detail {

/// Incremental rank of a growing set of rows (fraction-free elimination).
class RankTracker {
public:
    explicit RankTracker(std::size_t dim) : dim_(dim) {}

    std::size_t rank() const { return basis_.size(); }

    void add(const SparseRow& row)
    {
        std::vector<Integer> v(dim_, Integer(0));
        for (const auto& [c, k] : row) v[c] += k;
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            const auto pc = pivots_[b];
            if (v[pc] == 0) continue;
            const Integer a = basis_[b][pc], m = v[pc];
            for (std::size_t c = 0; c < dim_; ++c) v[c] = v[c] * a - basis_[b][c] * m;
            make_primitive(v);
        }
        for (std::size_t c = 0; c < dim_; ++c)
            if (v[c] != 0) {
                pivots_.push_back(c);
                basis_.push_back(std::move(v));
                return;
            }
    }

private:
    std::size_t dim_;
    std::vector<std::vector<Integer>> basis_;
    std::vector<std::size_t> pivots_;
};

struct Ray {
    std::vector<Integer> x;
    Bits zero;
};

inline Bits zero_set(const std::vector<Integer>& x)
{
    Bits z(x.size());
    for (std::size_t c = 0; c < x.size(); ++c)
        if (x[c] == 0) z.set(c);
    return z;
}

} // namespace detail

/// Extreme rays (primitive integer vectors, sorted lexicographically) of the
/// cone { x >= 0 : row . x = 0 for each row }. With a filter, only rays whose
/// support passes are generated; the result is then the union of the extreme
/// rays of every face { x_c = 0 : c outside S } with S allowed, provided the
/// filter is closed under taking subsets.
inline std::vector<std::vector<Integer>> extreme_rays(std::size_t dim, const std::vector<SparseRow>& equations,
                                                      const SupportFilter& allowed = {}, DDStats* stats = nullptr)
{
    std::vector<detail::Ray> rays;
    rays.reserve(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        std::vector<Integer> x(dim, Integer(0));
        x[c] = 1;
        auto z = detail::zero_set(x);
        rays.push_back({std::move(x), std::move(z)});
    }

    detail::RankTracker rank(dim);
    DDStats local;
    for (const auto& row : equations) {
        if (row.empty()) continue;
        ++local.equations;
        std::vector<Integer> value(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<detail::Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            Integer s = 0;
            for (const auto& [c, k] : row) s += k * rays[r].x[c];
            value[r] = s;
            if (s > 0) pos.push_back(r);
            else if (s < 0) neg.push_back(r);
        }
        if (pos.empty() || neg.empty()) {
            // Only the rays on the hyperplane survive.
            for (std::size_t r = 0; r < rays.size(); ++r)
                if (value[r] == 0) next.push_back(std::move(rays[r]));
            rays = std::move(next);
            rank.add(row);
            local.max_rays = std::max(local.max_rays, rays.size());
            continue;
        }

        const std::size_t r_k = rank.rank();
        const std::size_t need = dim >= r_k + 2 ? dim - r_k - 2 : 0;
        for (auto p : pos)
            for (auto q : neg) {
                Bits common = rays[p].zero & rays[q].zero;
                if (common.count() < need) continue;
                if (allowed && !allowed(~common)) continue;
                ++local.candidate_pairs;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != q && common.subset_of(rays[r].zero)) adjacent = false;
                if (!adjacent) continue;
                std::vector<Integer> x(dim);
                const Integer a = value[p], b = -value[q];
                for (std::size_t c = 0; c < dim; ++c) x[c] = a * rays[q].x[c] + b * rays[p].x[c];
                make_primitive(x);
                auto z = detail::zero_set(x);
                next.push_back({std::move(x), std::move(z)});
            }
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (value[r] == 0) next.push_back(std::move(rays[r]));
        rays = std::move(next);
        rank.add(row);
        local.max_rays = std::max(local.max_rays, rays.size());
    }

    std::vector<std::vector<Integer>> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (stats) *stats = local;
    return out;
}

} // namespace nsurf
