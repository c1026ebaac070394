#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regge/perm4.hpp"

namespace regge {

// Target of one face gluing: face `face` of tetrahedron `tet`, with the
// vertex relabeling `perm` mapping source labels to target labels.
struct Gluing {
    int tet = -1;
    int face = -1;
    Perm4 perm;
    bool operator==(const Gluing&) const = default;
};

// A closed triangulation given by gluing the 4K faces of K tetrahedra in
// pairs. Face f of a tetrahedron is the face opposite vertex f; the gluing
// permutation carries all four vertex labels and maps f to the target face.
//
// Values are immutable once constructed. Every constructed value gets a
// distinct revision id so move sites can detect staleness.
class GluedTriangulation {
public:
    // Empty value (tet_count 0), the moved-from and placeholder state.
    GluedTriangulation() = default;

    // Takes 4K gluing records indexed by 4*tet + face. Verifies that the
    // gluing map is a fixed-point-free involution on faces, total, and that
    // the face-adjacency graph is connected. Throws StructureError.
    static GluedTriangulation from_gluings(int tet_count, std::vector<Gluing> gluings);

    int tet_count() const { return tet_count_; }

    const Gluing& gluing(int tet, int face) const {
        return gluings_[static_cast<size_t>(4 * tet + face)];
    }
    const Gluing& gluing(int face_slot) const { return gluings_[static_cast<size_t>(face_slot)]; }

    uint64_t revision() const { return revision_; }

    GluedTriangulation(const GluedTriangulation& other);
    GluedTriangulation& operator=(const GluedTriangulation& other);
    GluedTriangulation(GluedTriangulation&&) noexcept = default;
    GluedTriangulation& operator=(GluedTriangulation&&) noexcept = default;

    // Content equality (same labels, same gluings); revision is ignored.
    bool same_gluings(const GluedTriangulation& other) const {
        return tet_count_ == other.tet_count_ && gluings_ == other.gluings_;
    }

private:
    int tet_count_ = 0;
    std::vector<Gluing> gluings_;
    uint64_t revision_ = 0;
};

// Parses the line-based gluing format:
//   # comment
//   tets K
//   t f : t' f' p0p1p2p3
// Each gluing may appear once or twice; if twice the two lines must be
// mutually inverse. All 4K faces must be covered. Throws ParseError.
GluedTriangulation parse_gluing_text(std::string_view text);

std::string to_gluing_text(const GluedTriangulation& t);

// Relabels tetrahedra and vertices: tetrahedron t becomes tet_order[t] and
// its vertex labels are mapped through vertex_maps[t].
GluedTriangulation relabel(const GluedTriangulation& t, std::span<const int> tet_order,
                           std::span<const Perm4> vertex_maps);

// The boundary of the 4-simplex: five tetrahedra, every pair sharing one
// face. The minimal triangulation of the 3-sphere.
GluedTriangulation boundary_4_simplex();

// Two tetrahedra with face i of one glued to face i of the other by the
// identity relabeling; also a 3-sphere.
GluedTriangulation doubled_tetrahedron();

}  // namespace regge
