#pragma once

#include <string>
#include <utility>
#include <vector>

#include "regge/triangulation.hpp"

namespace regge {

// Canonical printable signature "cdt1-<K>-<payload>". Two triangulations have
// equal signatures iff they are related by a relabeling of tetrahedra and
// vertices.
//
// Construction. For each of the K*24 rooted labelings (start tetrahedron,
// vertex relabeling of the root), tetrahedra are discovered by scanning the
// relabeled faces in (tet, face) ascending order; a newly discovered
// tetrahedron receives the next free index and the vertex relabeling that
// turns the discovering gluing into the identity permutation. The traversal
// emits, for each relabeled face in scan order, the record
//   rec = (target_tet * 4 + target_face) * 24 + perm_index
// with perm_index the rank 0..23 of the relabeled gluing permutation in
// lexicographic one-line order. The signature payload is the lexicographically
// least record sequence, written as 4K fixed-width base-36 numbers (width =
// digits needed for 96K-1).
struct IsoSignature {
    std::string text;
    bool operator==(const IsoSignature&) const = default;
    auto operator<=>(const IsoSignature&) const = default;
};

IsoSignature iso_signature(const GluedTriangulation& t);

// Signature plus the order of the automorphism group (the number of rooted
// labelings attaining the minimal record sequence).
std::pair<IsoSignature, int> iso_signature_with_symmetries(const GluedTriangulation& t);

// Rebuilds a triangulation from its signature; the result reproduces the
// signature exactly. Throws ParseError on malformed input.
GluedTriangulation decode_signature(const std::string& text);

// Canonical record sequence of the labeling as built (no relabeling). Equal
// to the minimal sequence iff the triangulation is canonically labeled.
std::vector<uint32_t> serialize_as_built(const GluedTriangulation& t);
std::vector<uint32_t> minimal_serialization(const GluedTriangulation& t);

// True iff two triangulations are related by a relabeling. Exhaustive over
// all rooted labelings; independent of the signature machinery's minimum.
bool isomorphic(const GluedTriangulation& a, const GluedTriangulation& b);

}  // namespace regge
