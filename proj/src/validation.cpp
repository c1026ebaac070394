#include "regge/validation.hpp"

#include <algorithm>

namespace regge {

ValidationReport validate_manifold(const GluedTriangulation& t) {
    QuotientSkeleton s(t);
    return validate_manifold(t, s);
}

ValidationReport validate_manifold(const GluedTriangulation& t, const QuotientSkeleton& s) {
    ValidationReport report;
    int k = t.tet_count();

    // Link of a vertex orbit: one triangle per (tet, vertex) incidence, sides
    // glued through the face gluings. Corners of link triangles correspond to
    // directed edge classes, so the Euler characteristic is
    //   #corner classes - (3/2) #incidences + #incidences.
    std::vector<int> faces(static_cast<size_t>(s.n0()), 0);
    std::vector<std::vector<int>> corner_classes(static_cast<size_t>(s.n0()));
    for (int tet = 0; tet < k; ++tet) {
        for (int v = 0; v < 4; ++v) {
            int orbit = s.vertex_orbit(tet, v);
            ++faces[static_cast<size_t>(orbit)];
            for (int u = 0; u < 4; ++u) {
                if (u == v) continue;
                corner_classes[static_cast<size_t>(orbit)].push_back(s.directed_class(tet, v, u));
            }
        }
    }
    for (int orbit = 0; orbit < s.n0(); ++orbit) {
        auto& cc = corner_classes[static_cast<size_t>(orbit)];
        std::sort(cc.begin(), cc.end());
        cc.erase(std::unique(cc.begin(), cc.end()), cc.end());
        int f = faces[static_cast<size_t>(orbit)];
        VertexLinkSummary vl;
        vl.orbit = orbit;
        vl.euler = static_cast<int>(cc.size()) - (3 * f) / 2 + f;
        report.vertex_links.push_back(vl);
        if (!vl.is_sphere())
            report.reasons.push_back("vertex link not a sphere (orbit " + std::to_string(orbit) +
                                     ", euler " + std::to_string(vl.euler) + ")");
    }

    for (int orbit = 0; orbit < s.n1(); ++orbit) {
        if (s.edge_reversed(orbit)) {
            report.reversed_edge_orbits.push_back(orbit);
            report.reasons.push_back("edge orbit " + std::to_string(orbit) +
                                     " identified with itself reversed");
        }
    }

    report.valid = report.reasons.empty();

    // Orientability: assign signs along a spanning tree; a gluing with an odd
    // permutation preserves the sign, an even one flips it.
    std::vector<int> sign(static_cast<size_t>(k), 0);
    std::vector<int> stack{0};
    sign[0] = 1;
    bool orientable = true;
    while (!stack.empty() && orientable) {
        int tet = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(tet, f);
            int expect = g.perm.is_even() ? -sign[static_cast<size_t>(tet)] : sign[static_cast<size_t>(tet)];
            if (sign[static_cast<size_t>(g.tet)] == 0) {
                sign[static_cast<size_t>(g.tet)] = expect;
                stack.push_back(g.tet);
            } else if (sign[static_cast<size_t>(g.tet)] != expect) {
                orientable = false;
                break;
            }
        }
    }
    report.orientable = orientable;
    return report;
}

}  // namespace regge
