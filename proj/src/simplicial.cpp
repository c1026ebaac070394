#include "regge/simplicial.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace regge {

SimplicialCheck is_simplicial(const GluedTriangulation& t) {
    QuotientSkeleton s(t);
    return is_simplicial(t, s);
}

SimplicialCheck is_simplicial(const GluedTriangulation& t, const QuotientSkeleton& s) {
    int k = t.tet_count();

    // Tetrahedra first: distinct vertex orbits, unique vertex sets.
    std::map<std::array<int, 4>, int> tet_sets;
    for (int tet = 0; tet < k; ++tet) {
        std::array<int, 4> vs;
        for (int v = 0; v < 4; ++v) vs[static_cast<size_t>(v)] = s.vertex_orbit(tet, v);
        std::sort(vs.begin(), vs.end());
        for (int i = 0; i < 3; ++i)
            if (vs[static_cast<size_t>(i)] == vs[static_cast<size_t>(i + 1)])
                return {false, "tetrahedron " + std::to_string(tet) + " has a repeated vertex orbit"};
        auto [it, inserted] = tet_sets.emplace(vs, tet);
        if (!inserted)
            return {false, "tetrahedra " + std::to_string(it->second) + " and " +
                               std::to_string(tet) + " share all vertex orbits"};
    }

    std::map<std::array<int, 3>, int> tri_sets;
    std::vector<char> tri_seen(static_cast<size_t>(s.n2()), 0);
    for (int tet = 0; tet < k; ++tet) {
        for (int f = 0; f < 4; ++f) {
            int orbit = s.triangle_orbit(tet, f);
            if (tri_seen[static_cast<size_t>(orbit)]) continue;
            tri_seen[static_cast<size_t>(orbit)] = 1;
            std::array<int, 3> vs;
            int n = 0;
            for (int v = 0; v < 4; ++v)
                if (v != f) vs[static_cast<size_t>(n++)] = s.vertex_orbit(tet, v);
            std::sort(vs.begin(), vs.end());
            if (vs[0] == vs[1] || vs[1] == vs[2])
                return {false, "triangle orbit " + std::to_string(orbit) + " has a repeated vertex orbit"};
            auto [it, inserted] = tri_sets.emplace(vs, orbit);
            if (!inserted)
                return {false, "triangle orbits " + std::to_string(it->second) + " and " +
                                   std::to_string(orbit) + " share all vertex orbits"};
        }
    }

    std::map<std::array<int, 2>, int> edge_sets;
    std::vector<char> edge_seen(static_cast<size_t>(s.n1()), 0);
    for (int tet = 0; tet < k; ++tet) {
        for (int e = 0; e < 6; ++e) {
            auto [u, v] = tet_edge_vertices(e);
            int orbit = s.edge_orbit(tet, u, v);
            if (edge_seen[static_cast<size_t>(orbit)]) continue;
            edge_seen[static_cast<size_t>(orbit)] = 1;
            std::array<int, 2> vs{s.vertex_orbit(tet, u), s.vertex_orbit(tet, v)};
            if (vs[0] > vs[1]) std::swap(vs[0], vs[1]);
            if (vs[0] == vs[1])
                return {false, "edge orbit " + std::to_string(orbit) + " has identified endpoints"};
            auto [it, inserted] = edge_sets.emplace(vs, orbit);
            if (!inserted)
                return {false, "edge orbits " + std::to_string(it->second) + " and " +
                                   std::to_string(orbit) + " share endpoints"};
        }
    }

    return {true, ""};
}

}  // namespace regge
