#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regge/skeleton.hpp"
#include "regge/triangulation.hpp"

namespace regge {

// First integral homology: free rank plus invariant factors >= 2, ascending.
struct HomologyProfile {
    int free_rank = 0;
    std::vector<int64_t> torsion;
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    // "0" when trivial, else e.g. "Z", "Z2", "Z+Z2", "Z3+Z3".
    std::string to_string() const;
    bool operator==(const HomologyProfile&) const = default;
};

// H1 of the quotient CW complex (orbit cells) via integer Smith normal form
// of the boundary matrices.
HomologyProfile homology_h1(const GluedTriangulation& t);
HomologyProfile homology_h1(const QuotientSkeleton& s);

// Smith normal form diagonal (nonnegative, divisibility chain) of an integer
// matrix given as rows. Exposed for oracle-style cross-checks.
std::vector<int64_t> smith_normal_form(std::vector<std::vector<int64_t>> m);

}  // namespace regge
