#pragma once

#include <string>

#include "regge/skeleton.hpp"
#include "regge/triangulation.hpp"

namespace regge {

// is_simplicial: the quotient complex is an abstract simplicial complex,
// i.e. every simplex has distinct vertex orbits and is the unique simplex on
// its vertex-orbit set. `witness` names the first violation otherwise.
struct SimplicialCheck {
    bool simplicial = false;
    std::string witness;
};

SimplicialCheck is_simplicial(const GluedTriangulation& t);
SimplicialCheck is_simplicial(const GluedTriangulation& t, const QuotientSkeleton& s);

}  // namespace regge
