#pragma once

#include <cstdint>
#include <vector>

#include "regge/skeleton.hpp"
#include "regge/triangulation.hpp"

namespace regge {

enum class MoveKind : uint8_t { OneFour = 0, FourOne = 1, TwoThree = 2, ThreeTwo = 3 };

using MoveKindSet = unsigned;
inline constexpr MoveKindSet kMoveOneFour = 1u << 0;
inline constexpr MoveKindSet kMoveFourOne = 1u << 1;
inline constexpr MoveKindSet kMoveTwoThree = 1u << 2;
inline constexpr MoveKindSet kMoveThreeTwo = 1u << 3;
inline constexpr MoveKindSet kAllMoves =
    kMoveOneFour | kMoveFourOne | kMoveTwoThree | kMoveThreeTwo;

inline MoveKindSet move_bit(MoveKind k) { return 1u << static_cast<unsigned>(k); }
const char* move_kind_name(MoveKind k);

// A move site addressed against a specific triangulation revision:
//   1-4: tetrahedron `tet`
//   2-3: face (tet, a), the lower slot of its triangle orbit
//   3-2: directed edge (tet, a -> b), the orbit representative
//   4-1: vertex (tet, a), the lowest incidence of its orbit
struct PachnerMove {
    MoveKind kind = MoveKind::OneFour;
    int tet = -1;
    int a = -1;
    int b = -1;
    uint64_t revision = 0;
};

// Exact simplex-count change per move kind; inverses negate, and the
// alternating sum is always zero.
struct FVectorDelta {
    int dn0 = 0, dn1 = 0, dn2 = 0, dn3 = 0;
    bool operator==(const FVectorDelta&) const = default;
};

FVectorDelta fvector_delta(MoveKind kind);
MoveKind inverse_kind(MoveKind kind);

// All valid moves of the requested kinds:
//   1-4 on every tetrahedron;
//   2-3 where the triangle's two sides lie in distinct tetrahedra;
//   3-2 on degree-3 edge orbits with three pairwise-distinct tetrahedra;
//   4-1 on vertex orbits whose star is exactly the 1-4 pattern on four
//       distinct tetrahedra.
std::vector<PachnerMove> enumerate_moves(const GluedTriangulation& t,
                                         MoveKindSet kinds = kAllMoves);
std::vector<PachnerMove> enumerate_moves(const GluedTriangulation& t, const QuotientSkeleton& s,
                                         MoveKindSet kinds = kAllMoves);

// Applies a move, producing a new triangulation of the same manifold. The
// input is never mutated. Throws InvalidMoveError when the site is stale or
// not valid in `t`.
GluedTriangulation apply_move(const GluedTriangulation& t, const PachnerMove& m);

}  // namespace regge
