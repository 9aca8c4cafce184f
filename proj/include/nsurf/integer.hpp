#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nsurf {

/// Arbitrary-precision signed integer used for every coordinate and matrix entry.
using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b)
{
    return boost::multiprecision::gcd(a, b);
}

/// gcd of all entries (0 for an all-zero span).
inline Integer gcd_of(std::span<const Integer> xs)
{
    Integer g = 0;
    for (const auto& x : xs) {
        if (x != 0) {
            g = gcd(g, x);
            if (g == 1) break;
        }
    }
    return g;
}

/// Divides by the gcd so the vector is the smallest lattice point on its ray.
inline void make_primitive(std::vector<Integer>& xs)
{
    Integer g = gcd_of(xs);
    if (g > 1)
        for (auto& x : xs) x /= g;
}

inline std::string to_string(const Integer& x) { return x.str(); }

} // namespace nsurf
