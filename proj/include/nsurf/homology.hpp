#pragma once

#include "nsurf/integer.hpp"
#include "nsurf/skeleton.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nsurf {

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n)
    {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    IntegerMatrix operator*(const IntegerMatrix& b) const
    {
        IntegerMatrix m(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Integer& x = (*this)(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }

    bool is_zero() const
    {
        return std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; });
    }

    bool operator==(const IntegerMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

struct SmithForm {
    std::vector<Integer> diagonal;  // length min(rows, cols), each dividing the next nonzero one
    std::size_t rank = 0;
    /// Unimodular transforms with row_transform * M * col_transform == diag(diagonal);
    /// filled only when requested.
    std::optional<IntegerMatrix> row_transform, col_transform;
};

namespace detail {

class SmithReducer {
public:
    SmithReducer(IntegerMatrix m, bool record)
        : a_(std::move(m)), record_(record)
    {
        if (record_) {
            u_ = IntegerMatrix::identity(a_.rows());
            v_ = IntegerMatrix::identity(a_.cols());
        }
    }

    SmithForm run()
    {
        const std::size_t r = a_.rows(), c = a_.cols(), d = std::min(r, c);
        SmithForm out;
        for (std::size_t t = 0; t < d; ++t) {
            if (!move_min_to(t)) break;
            for (;;) {
                bool dirty = clear_column(t);
                dirty = clear_row(t) || dirty;
                if (dirty) continue;
                // Divisibility: fold any offending row into the pivot row.
                bool fixed = false;
                for (std::size_t i = t + 1; i < r && !fixed; ++i)
                    for (std::size_t j = t + 1; j < c; ++j)
                        if (a_(i, j) % a_(t, t) != 0) {
                            add_row(t, i, 1);
                            fixed = true;
                            break;
                        }
                if (!fixed) break;
            }
            if (a_(t, t) < 0) negate_row(t);
        }
        out.diagonal.resize(d);
        for (std::size_t t = 0; t < d; ++t) {
            out.diagonal[t] = a_(t, t);
            if (out.diagonal[t] != 0) ++out.rank;
        }
        if (record_) {
            out.row_transform = std::move(u_);
            out.col_transform = std::move(v_);
        }
        return out;
    }

private:
    // Moves the entry of least nonzero magnitude in the trailing block to (t,t).
    bool move_min_to(std::size_t t)
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer best_abs;
        for (std::size_t i = t; i < a_.rows(); ++i)
            for (std::size_t j = t; j < a_.cols(); ++j) {
                if (a_(i, j) == 0) continue;
                Integer m = nsurf::abs(a_(i, j));
                if (!best || m < best_abs) {
                    best = {i, j};
                    best_abs = m;
                    if (best_abs == 1) goto found;
                }
            }
    found:
        if (!best) return false;
        swap_rows(t, best->first);
        swap_cols(t, best->second);
        return true;
    }

    // Reduces column t below the pivot; returns true if a remainder remains
    // (the pivot was replaced by a smaller entry).
    bool clear_column(std::size_t t)
    {
        bool again = false;
        for (std::size_t i = t + 1; i < a_.rows(); ++i) {
            if (a_(i, t) == 0) continue;
            Integer q = a_(i, t) / a_(t, t);
            add_row(i, t, -q);
            if (a_(i, t) != 0) {
                swap_rows(t, i);
                again = true;
            }
        }
        return again;
    }

    bool clear_row(std::size_t t)
    {
        bool again = false;
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
            if (a_(t, j) == 0) continue;
            Integer q = a_(t, j) / a_(t, t);
            add_col(j, t, -q);
            if (a_(t, j) != 0) {
                swap_cols(t, j);
                again = true;
            }
        }
        return again;
    }

    // row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& k)
    {
        for (std::size_t j = 0; j < a_.cols(); ++j)
            if (a_(src, j) != 0) a_(dst, j) += k * a_(src, j);
        if (record_)
            for (std::size_t j = 0; j < u_.cols(); ++j)
                if (u_(src, j) != 0) u_(dst, j) += k * u_(src, j);
    }

    void add_col(std::size_t dst, std::size_t src, const Integer& k)
    {
        for (std::size_t i = 0; i < a_.rows(); ++i)
            if (a_(i, src) != 0) a_(i, dst) += k * a_(i, src);
        if (record_)
            for (std::size_t i = 0; i < v_.rows(); ++i)
                if (v_(i, src) != 0) v_(i, dst) += k * v_(i, src);
    }

    void swap_rows(std::size_t x, std::size_t y)
    {
        if (x == y) return;
        for (std::size_t j = 0; j < a_.cols(); ++j) std::swap(a_(x, j), a_(y, j));
        if (record_)
            for (std::size_t j = 0; j < u_.cols(); ++j) std::swap(u_(x, j), u_(y, j));
    }

    void swap_cols(std::size_t x, std::size_t y)
    {
        if (x == y) return;
        for (std::size_t i = 0; i < a_.rows(); ++i) std::swap(a_(i, x), a_(i, y));
        if (record_)
            for (std::size_t i = 0; i < v_.rows(); ++i) std::swap(v_(i, x), v_(i, y));
    }

    void negate_row(std::size_t x)
    {
        for (std::size_t j = 0; j < a_.cols(); ++j) a_(x, j) = -a_(x, j);
        if (record_)
            for (std::size_t j = 0; j < u_.cols(); ++j) u_(x, j) = -u_(x, j);
    }

    IntegerMatrix a_, u_, v_;
    bool record_;
};

} // namespace detail

/// Smith normal form by least-magnitude pivoting.
inline SmithForm smith_normal_form(const IntegerMatrix& m, bool record_transforms = false)
{
    return detail::SmithReducer(m, record_transforms).run();
}

/// Finitely generated abelian group Z^betti + Z/torsion[0] + ... in
/// invariant-factor form (each torsion entry >= 2 and divides the next).
struct HomologyGroup {
    std::size_t betti = 0;
    std::vector<Integer> torsion;

    bool trivial() const { return betti == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup&) const = default;

    std::string str() const
    {
        std::string s;
        if (betti > 0) s = "Z^" + std::to_string(betti);
        for (const auto& d : torsion) {
            if (!s.empty()) s += " + ";
            s += "Z/" + d.str();
        }
        return s.empty() ? "0" : s;
    }
};

/// Canonical group from an arbitrary list of cyclic orders (0 = free, 1 = trivial).
inline HomologyGroup group_from_cyclic_factors(const std::vector<Integer>& orders)
{
    HomologyGroup g;
    std::vector<Integer> finite;
    for (const auto& d : orders) {
        if (d == 0) ++g.betti;
        else if (nsurf::abs(d) > 1) finite.push_back(nsurf::abs(d));
    }
    if (finite.empty()) return g;
    IntegerMatrix m(finite.size(), finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) m(i, i) = finite[i];
    for (const auto& d : smith_normal_form(m).diagonal)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

inline HomologyGroup direct_sum(const HomologyGroup& a, const HomologyGroup& b)
{
    std::vector<Integer> orders(a.betti + b.betti, Integer(0));
    orders.insert(orders.end(), a.torsion.begin(), a.torsion.end());
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    return group_from_cyclic_factors(orders);
}

struct BoundaryMatrices {
    IntegerMatrix d2;  // edge classes x face classes
    IntegerMatrix d1;  // vertex classes x edge classes
};

/// Cellular boundary maps of the gluing complex. Edge classes are oriented by
/// their least representative (low to high local vertex); face classes by the
/// ascending vertex order of their least representative.
inline BoundaryMatrices boundary_matrices(const Triangulation& t, const Skeleton& sk)
{
    BoundaryMatrices b{IntegerMatrix(sk.edges.size(), sk.faces.size()),
                       IntegerMatrix(sk.vertices.size(), sk.edges.size())};
    for (std::size_t e = 0; e < sk.edges.size(); ++e) {
        const auto& rep = sk.edges[e].front();
        const int lo = kEdgeVertices[rep.edge][0], hi = kEdgeVertices[rep.edge][1];
        // Representative has sign +1 by construction.
        b.d1(sk.vertex_of[rep.tet][hi], e) += 1;
        b.d1(sk.vertex_of[rep.tet][lo], e) -= 1;
    }
    for (std::size_t fc = 0; fc < sk.faces.size(); ++fc) {
        const auto [tet, f] = sk.faces[fc].rep;
        int v[3], k = 0;
        for (int x = 0; x < 4; ++x)
            if (x != f) v[k++] = x;
        // boundary [v0 v1 v2] = [v1 v2] - [v0 v2] + [v0 v1]
        const int e12 = edge_index(v[1], v[2]), e02 = edge_index(v[0], v[2]), e01 = edge_index(v[0], v[1]);
        b.d2(sk.edge_of[tet][e12], fc) += sk.edge_sign[tet][e12];
        b.d2(sk.edge_of[tet][e02], fc) -= sk.edge_sign[tet][e02];
        b.d2(sk.edge_of[tet][e01], fc) += sk.edge_sign[tet][e01];
    }
    (void)t;
    return b;
}

inline BoundaryMatrices boundary_matrices(const Triangulation& t)
{
    if (!validate(t).is_manifold())
        throw PreconditionError("boundary_matrices: not a valid manifold triangulation");
    return boundary_matrices(t, compute_skeleton(t));
}

/// First homology H1 = ker d1 / im d2. Since ker d1 is a direct summand of the
/// edge lattice, the torsion is read off the Smith form of d2 alone.
inline HomologyGroup h1(const Triangulation& t)
{
    if (t.empty()) return {};
    const auto report = validate(t);
    if (!report.is_manifold()) throw PreconditionError("h1: not a valid manifold triangulation");
    if (!report.orientable) throw PreconditionError("h1: triangulation is not orientable");
    const Skeleton sk = compute_skeleton(t);
    const auto b = boundary_matrices(t, sk);
    const auto s1 = smith_normal_form(b.d1);
    const auto s2 = smith_normal_form(b.d2);
    HomologyGroup g;
    g.betti = sk.edges.size() - s1.rank - s2.rank;
    for (const auto& d : s2.diagonal)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

} // namespace nsurf
