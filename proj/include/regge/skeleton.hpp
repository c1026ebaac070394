#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "regge/triangulation.hpp"

namespace regge {

// Exact mean bone-degree mu(T) = 6K/N1, stored unreduced.
struct RationalMu {
    int64_t num = 0;  // 6K
    int64_t den = 1;  // N1
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const RationalMu&) const = default;
};

// Index of the undirected edge {u,v} within a tetrahedron, 0..5.
int tet_edge_index(int u, int v);
// Endpoints (u < v) of tetrahedron edge index e.
std::array<int, 2> tet_edge_vertices(int e);

// Orbits of vertices, edges and triangles under the face gluings, with
// per-edge-orbit degrees. Instance slots: vertex 4t+v, edge 6t+e, directed
// edge 16t+4u+v, triangle (face) 4t+f.
class QuotientSkeleton {
public:
    explicit QuotientSkeleton(const GluedTriangulation& t);

    int n0() const { return n0_; }
    int n1() const { return n1_; }
    int n2() const { return n2_; }
    int n3() const { return n3_; }

    int vertex_orbit(int tet, int v) const { return vertex_orbit_[static_cast<size_t>(4 * tet + v)]; }
    int edge_orbit(int tet, int u, int v) const {
        return edge_orbit_[static_cast<size_t>(6 * tet + tet_edge_index(u, v))];
    }
    int triangle_orbit(int tet, int f) const { return tri_orbit_[static_cast<size_t>(4 * tet + f)]; }

    int edge_degree(int orbit) const { return edge_degree_[static_cast<size_t>(orbit)]; }
    // True when the orbit identifies an edge with itself reversed.
    bool edge_reversed(int orbit) const { return edge_reversed_[static_cast<size_t>(orbit)] != 0; }

    // Directed-edge class of the ordered pair (u,v) in tet; classes are
    // numbered so each valid undirected orbit splits into two.
    int directed_class(int tet, int u, int v) const {
        return dir_class_[static_cast<size_t>(16 * tet + 4 * u + v)];
    }
    // +1 when (u,v) runs along its orbit's reference direction, -1 otherwise.
    // Meaningless for reversed orbits.
    int edge_sign(int tet, int u, int v) const;

    // Lowest instance slots, used as deterministic representatives.
    int vertex_orbit_count() const { return n0_; }
    const std::vector<int>& vertex_orbit_of_slots() const { return vertex_orbit_; }
    std::vector<std::array<int, 2>> vertex_orbit_members(int orbit) const;  // (tet, v) pairs
    std::vector<std::array<int, 3>> edge_orbit_members(int orbit) const;    // (tet, u, v) along reference direction

    // Representative directed instance (tet, u, v) of an edge orbit.
    std::array<int, 3> edge_orbit_representative(int orbit) const;
    // Representative face slot (tet, f) of a triangle orbit.
    std::array<int, 2> triangle_orbit_representative(int orbit) const;
    // Representative (tet, v) of a vertex orbit.
    std::array<int, 2> vertex_orbit_representative(int orbit) const;

    int64_t degree_sum() const;

private:
    const GluedTriangulation* t_;
    int n0_ = 0, n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<int> vertex_orbit_;   // 4K
    std::vector<int> edge_orbit_;     // 6K
    std::vector<int> dir_class_;      // 16K (4 diagonal slots per tet unused, -1)
    std::vector<int> tri_orbit_;      // 4K
    std::vector<int> edge_degree_;    // per orbit
    std::vector<char> edge_reversed_; // per orbit
    std::vector<int> edge_ref_class_; // per orbit: directed class counted +1
};

QuotientSkeleton skeleton(const GluedTriangulation& t);

RationalMu mean_bone_degree(const GluedTriangulation& t);
RationalMu mean_bone_degree(const QuotientSkeleton& s);

}  // namespace regge
