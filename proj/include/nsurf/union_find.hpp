#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace nsurf {

/// Union-find with an optional Z/2 label on each element relative to its root.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), parity_(n, 0), rank_(n, 0)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    /// Root of x and the parity of x relative to that root.
    std::pair<std::size_t, int> find(std::size_t x)
    {
        int par = 0;
        std::size_t r = x;
        while (parent_[r] != r) {
            par ^= parity_[r];
            r = parent_[r];
        }
        // path compression, keeping parities consistent
        int acc = par;
        while (parent_[x] != r) {
            std::size_t next = parent_[x];
            int px = parity_[x];
            parent_[x] = r;
            parity_[x] = acc;
            acc ^= px;
            x = next;
        }
        return {r, par};
    }

    std::size_t root(std::size_t x) { return find(x).first; }

    /// Asserts parity(a) ^ parity(b) == rel. Returns false on contradiction.
    bool unite(std::size_t a, std::size_t b, int rel = 0)
    {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        parity_[rb] = pa ^ pb ^ rel;
        if (rank_[ra] == rank_[rb]) ++rank_[ra];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> parity_;
    std::vector<int> rank_;
};

/// Numbers the classes of a partition of 0..n-1 in order of first appearance.
inline std::vector<std::size_t> dense_class_ids(UnionFind& uf, std::size_t n, std::size_t& count)
{
    std::vector<std::size_t> id(n), root_id(n, static_cast<std::size_t>(-1));
    count = 0;
    for (std::size_t x = 0; x < n; ++x) {
        auto r = uf.root(x);
        if (root_id[r] == static_cast<std::size_t>(-1)) root_id[r] = count++;
        id[x] = root_id[r];
    }
    return id;
}

} // namespace nsurf
