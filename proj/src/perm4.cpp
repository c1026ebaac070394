#include "regge/perm4.hpp"

namespace regge {

Perm4 Perm4::from_index(int index) {
    // Factorial number system over the shrinking pool {0,1,2,3}.
    std::array<uint8_t, 4> pool{0, 1, 2, 3};
    Perm4 p;
    int radix[4] = {6, 2, 1, 1};
    int n = 4;
    for (int i = 0; i < 4; ++i) {
        int d = (index / radix[i]) % (4 - i);
        if (i == 3) d = 0;
        p.img_[static_cast<size_t>(i)] = pool[static_cast<size_t>(d)];
        for (int j = d; j < n - 1; ++j) pool[static_cast<size_t>(j)] = pool[static_cast<size_t>(j + 1)];
        --n;
    }
    return p;
}

int Perm4::index() const {
    int idx = 0;
    int radix[4] = {6, 2, 1, 1};
    for (int i = 0; i < 4; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < 4; ++j)
            if (img_[static_cast<size_t>(j)] < img_[static_cast<size_t>(i)]) ++smaller;
        idx += smaller * radix[i];
    }
    return idx;
}

Perm4 Perm4::transposition(int a, int b) {
    Perm4 p;
    p.img_[static_cast<size_t>(a)] = static_cast<uint8_t>(b);
    p.img_[static_cast<size_t>(b)] = static_cast<uint8_t>(a);
    return p;
}

Perm4 Perm4::inverse() const {
    Perm4 p;
    for (int i = 0; i < 4; ++i) p.img_[img_[static_cast<size_t>(i)]] = static_cast<uint8_t>(i);
    return p;
}

Perm4 Perm4::after(const Perm4& q) const {
    Perm4 p;
    for (int i = 0; i < 4; ++i) p.img_[static_cast<size_t>(i)] = img_[q.img_[static_cast<size_t>(i)]];
    return p;
}

bool Perm4::is_even() const {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (img_[static_cast<size_t>(i)] > img_[static_cast<size_t>(j)]) ++inv;
    return (inv % 2) == 0;
}

bool Perm4::is_valid() const {
    unsigned seen = 0;
    for (int i = 0; i < 4; ++i) {
        if (img_[static_cast<size_t>(i)] > 3) return false;
        seen |= 1u << img_[static_cast<size_t>(i)];
    }
    return seen == 0xF;
}

std::string Perm4::one_line() const {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[static_cast<size_t>(i)] = static_cast<char>('0' + img_[static_cast<size_t>(i)]);
    return s;
}

}  // namespace regge
