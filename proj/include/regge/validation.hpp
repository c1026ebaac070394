#pragma once

#include <string>
#include <vector>

#include "regge/skeleton.hpp"
#include "regge/triangulation.hpp"

namespace regge {

struct VertexLinkSummary {
    int orbit = -1;
    bool connected = true;  // orbits are generated by the link gluings, so always true here
    bool closed = true;     // all faces glued, so always true for these triangulations
    int euler = 0;
    bool is_sphere() const { return connected && closed && euler == 2; }
};

struct ValidationReport {
    std::vector<VertexLinkSummary> vertex_links;
    std::vector<int> reversed_edge_orbits;
    bool valid = false;
    bool orientable = false;
    std::vector<std::string> reasons;
};

// A structurally valid gluing is a closed 3-manifold iff every vertex link
// is a 2-sphere and no edge orbit is identified with itself reversed.
ValidationReport validate_manifold(const GluedTriangulation& t);
ValidationReport validate_manifold(const GluedTriangulation& t, const QuotientSkeleton& s);

}  // namespace regge
