#include "regge/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "regge/errors.hpp"

namespace regge {

namespace {

void check_magnitude(int64_t v) {
    if (v > (int64_t{1} << 60) || v < -(int64_t{1} << 60))
        throw DomainError("integer overflow risk in Smith normal form");
}

}  // namespace

std::vector<int64_t> smith_normal_form(std::vector<std::vector<int64_t>> m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    std::vector<int64_t> diag;
    size_t r = 0, c = 0;
    while (r < rows && c < cols) {
        // Pivot: smallest nonzero magnitude in the remaining block.
        size_t pr = rows, pc = cols;
        int64_t best = 0;
        for (size_t i = r; i < rows; ++i)
            for (size_t j = c; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < best)) {
                    best = std::abs(m[i][j]);
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        std::swap(m[r], m[pr]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pc]);

        for (size_t i = r + 1; i < rows; ++i) {
            int64_t q = m[i][c] / m[r][c];
            if (q != 0)
                for (size_t j = c; j < cols; ++j) {
                    m[i][j] -= q * m[r][j];
                    check_magnitude(m[i][j]);
                }
        }
        for (size_t j = c + 1; j < cols; ++j) {
            int64_t q = m[r][j] / m[r][c];
            if (q != 0)
                for (size_t i = r; i < rows; ++i) {
                    m[i][j] -= q * m[i][c];
                    check_magnitude(m[i][j]);
                }
        }
        bool reduced = true;
        for (size_t i = r + 1; i < rows && reduced; ++i)
            if (m[i][c] != 0) reduced = false;
        for (size_t j = c + 1; j < cols && reduced; ++j)
            if (m[r][j] != 0) reduced = false;
        if (!reduced) continue;  // remainders left; pick a new pivot in the same block
        diag.push_back(std::abs(m[r][c]));
        ++r;
        ++c;
    }

    // Enforce the divisibility chain d1 | d2 | ...
    for (size_t i = 0; i + 1 < diag.size(); ++i) {
        for (size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[j] % diag[i] != 0) {
                int64_t a = diag[i], b = diag[j];
                int64_t g = std::gcd(a, b);
                int64_t l = a / g * b;
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

HomologyProfile homology_h1(const QuotientSkeleton& s) {
    int n0 = s.n0(), n1 = s.n1(), n2 = s.n2();

    // d1: edges -> vertices. Column per edge orbit, oriented along the
    // orbit's reference direction.
    std::vector<std::vector<int64_t>> d1(static_cast<size_t>(n0),
                                         std::vector<int64_t>(static_cast<size_t>(n1), 0));
    for (int e = 0; e < n1; ++e) {
        auto [tet, u, v] = s.edge_orbit_representative(e);
        d1[static_cast<size_t>(s.vertex_orbit(tet, v))][static_cast<size_t>(e)] += 1;
        d1[static_cast<size_t>(s.vertex_orbit(tet, u))][static_cast<size_t>(e)] -= 1;
    }

    // d2: triangles -> edges, using a representative face (a<b<c):
    // boundary = (b,c) - (a,c) + (a,b), each directed edge contributing the
    // sign of its direction against the edge orbit's reference.
    std::vector<std::vector<int64_t>> d2(static_cast<size_t>(n1),
                                         std::vector<int64_t>(static_cast<size_t>(n2), 0));
    for (int tri = 0; tri < n2; ++tri) {
        auto [tet, f] = s.triangle_orbit_representative(tri);
        int verts[3];
        int n = 0;
        for (int v = 0; v < 4; ++v)
            if (v != f) verts[n++] = v;
        int a = verts[0], b = verts[1], c = verts[2];
        auto add = [&](int u, int v, int coef) {
            int orbit = s.edge_orbit(tet, u, v);
            d2[static_cast<size_t>(orbit)][static_cast<size_t>(tri)] +=
                coef * s.edge_sign(tet, u, v);
        };
        add(b, c, 1);
        add(a, c, -1);
        add(a, b, 1);
    }

    std::vector<int64_t> s1 = smith_normal_form(d1);
    std::vector<int64_t> s2 = smith_normal_form(d2);
    int rank1 = 0;
    for (int64_t d : s1)
        if (d != 0) ++rank1;
    int rank2 = 0;
    for (int64_t d : s2)
        if (d != 0) ++rank2;

    HomologyProfile h;
    h.free_rank = n1 - rank1 - rank2;
    for (int64_t d : s2)
        if (d > 1) h.torsion.push_back(d);
    std::sort(h.torsion.begin(), h.torsion.end());
    return h;
}

HomologyProfile homology_h1(const GluedTriangulation& t) {
    return homology_h1(QuotientSkeleton(t));
}

std::string HomologyProfile::to_string() const {
    if (trivial()) return "0";
    std::string out;
    for (int i = 0; i < free_rank; ++i) {
        if (!out.empty()) out += "+";
        out += "Z";
    }
    for (int64_t d : torsion) {
        if (!out.empty()) out += "+";
        out += "Z" + std::to_string(d);
    }
    return out;
}

}  // namespace regge
