#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace regge {

// Permutation of the vertex labels {0,1,2,3} of a tetrahedron.
// Wire formats and signatures encode a permutation by its rank 0..23 in the
// lexicographic order of the one-line notation (0123 -> 0, 0132 -> 1, ...).
class Perm4 {
public:
    constexpr Perm4() : img_{0, 1, 2, 3} {}
    constexpr Perm4(int a, int b, int c, int d)
        : img_{static_cast<uint8_t>(a), static_cast<uint8_t>(b),
               static_cast<uint8_t>(c), static_cast<uint8_t>(d)} {}

    static Perm4 from_index(int index);
    static Perm4 transposition(int a, int b);

    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }

    // Lexicographic rank of the one-line notation, 0..23.
    int index() const;

    Perm4 inverse() const;

    // Composition: (p.after(q))(x) == p(q(x)).
    Perm4 after(const Perm4& q) const;

    bool is_even() const;
    bool is_identity() const { return img_[0] == 0 && img_[1] == 1 && img_[2] == 2 && img_[3] == 3; }

    // True when img_ holds each of 0..3 exactly once.
    bool is_valid() const;

    std::string one_line() const;

    bool operator==(const Perm4&) const = default;

private:
    std::array<uint8_t, 4> img_;
};

}  // namespace regge
