#pragma once

// Internal lookup tables for S4: composition, inverse and application by
// permutation index. Shared by the signature and census hot loops.

#include <cstdint>

#include "regge/perm4.hpp"

namespace regge::internal {

struct PermTables {
    uint8_t comp[24][24];  // comp[a][b] = index of (a after b)
    uint8_t inv[24];
    uint8_t app[24][4];
    PermTables() {
        for (int a = 0; a < 24; ++a) {
            Perm4 pa = Perm4::from_index(a);
            inv[a] = static_cast<uint8_t>(pa.inverse().index());
            for (int x = 0; x < 4; ++x) app[a][x] = static_cast<uint8_t>(pa(x));
            for (int b = 0; b < 24; ++b)
                comp[a][b] = static_cast<uint8_t>(pa.after(Perm4::from_index(b)).index());
        }
    }
};

inline const PermTables& perm_tables() {
    static const PermTables t;
    return t;
}

}  // namespace regge::internal
