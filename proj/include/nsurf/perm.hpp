#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nsurf {

/// Permutation of the four vertex labels {0,1,2,3} of a tetrahedron.
class Perm4 {
public:
    constexpr Perm4() : img_{0, 1, 2, 3} {}
    constexpr Perm4(int a, int b, int c, int d)
        : img_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
               static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)}
    {
    }

    static constexpr Perm4 transposition(int a, int b)
    {
        Perm4 p;
        p.img_[a] = static_cast<std::uint8_t>(b);
        p.img_[b] = static_cast<std::uint8_t>(a);
        return p;
    }

    /// Parses four digits such as "1032"; nullopt unless they form a permutation.
    static std::optional<Perm4> parse(std::string_view s)
    {
        if (s.size() != 4) return std::nullopt;
        std::array<bool, 4> seen{};
        Perm4 p;
        for (int i = 0; i < 4; ++i) {
            int d = s[i] - '0';
            if (d < 0 || d > 3 || seen[d]) return std::nullopt;
            seen[d] = true;
            p.img_[i] = static_cast<std::uint8_t>(d);
        }
        return p;
    }

    constexpr int operator[](int i) const { return img_[i]; }

    constexpr Perm4 inverse() const
    {
        Perm4 q;
        for (int i = 0; i < 4; ++i) q.img_[img_[i]] = static_cast<std::uint8_t>(i);
        return q;
    }

    /// (*this * other)(i) == (*this)[other[i]].
    constexpr Perm4 operator*(const Perm4& other) const
    {
        Perm4 q;
        for (int i = 0; i < 4; ++i) q.img_[i] = img_[other.img_[i]];
        return q;
    }

    /// +1 for even, -1 for odd.
    constexpr int sign() const
    {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img_[i] > img_[j]) ++inversions;
        return inversions % 2 == 0 ? 1 : -1;
    }

    constexpr bool is_identity() const { return *this == Perm4(); }

    std::string str() const
    {
        std::string s(4, '0');
        for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + img_[i]);
        return s;
    }

    constexpr bool operator==(const Perm4&) const = default;
    constexpr auto operator<=>(const Perm4&) const = default;

private:
    std::array<std::uint8_t, 4> img_;
};

/// Local edge numbering: 0:01 1:02 2:03 3:12 4:13 5:23.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_index(int a, int b)
{
    if (a > b) {
        int t = a;
        a = b;
        b = t;
    }
    constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[a][b];
}

/// Quadrilateral separations in frozen order: 0 = 01|23, 1 = 02|13, 2 = 03|12.
/// Returns the separation whose sides pair a with b.
constexpr int separation(int a, int b)
{
    constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 2, 1}, {1, 2, -1, 0}, {2, 1, 0, -1}};
    return table[a][b];
}

/// The vertex sharing a side with v in separation s.
constexpr int separation_partner(int s, int v)
{
    constexpr int table[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    return table[s][v];
}

inline constexpr std::array<const char*, 3> kSeparationNames{"01|23", "02|13", "03|12"};

} // namespace nsurf
