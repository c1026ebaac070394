#pragma once

// Independent oracles used by the tests: deliberately separate
// implementations of quantities the library computes, so each check has two
// routes to the same value.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "regge/triangulation.hpp"

namespace oracle {

// Frozen 40-digit reference constants (independently recomputable with any
// big-float library; the tests below also cross-check against long-double
// Newton refinement).
inline constexpr double kTheta3 = 1.2309594173407747;       // arccos(1/3)
inline constexpr double kMuStar3 = 5.1042993121195401;      // 2*pi/theta3
inline constexpr double kA3 = 0.87453588960560560;          // A_mu at mu=3, ell=1
inline constexpr double kA45 = 0.16742910841905808;         // mu=4.5
inline constexpr double kA36over7 = -0.0093475868775788033; // mu=36/7
inline constexpr double kA6 = -0.18612428217421568;         // mu=6
inline constexpr double kRawBd4 = 0.51532521494261137;      // raw action of the 5-tet sphere
inline constexpr double kNormBd4 = 0.87453588960560560;

// arccos(1/n) by Newton refinement in long double, independent of the
// library's frozen literals.
inline long double arccos_newton(long double x) {
    long double t = acosl(x);
    for (int i = 0; i < 4; ++i) t += (cosl(t) - x) / sinl(t);
    return t;
}

// Naive orbit count: union-find over an explicit list of identified pairs.
struct NaiveUnionFind {
    std::vector<int> parent;
    explicit NaiveUnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    int classes() {
        int c = 0;
        for (size_t i = 0; i < parent.size(); ++i)
            if (find(static_cast<int>(i)) == static_cast<int>(i)) ++c;
        return c;
    }
};

// f-vector computed directly from the gluing data, no library skeleton code.
struct NaiveCounts {
    int n0, n1, n2, n3;
};

inline NaiveCounts naive_counts(const regge::GluedTriangulation& t) {
    int k = t.tet_count();
    NaiveUnionFind vuf(4 * k), euf(6 * k), fuf(4 * k);
    static const int edge_index[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    for (int tet = 0; tet < k; ++tet)
        for (int f = 0; f < 4; ++f) {
            const regge::Gluing& g = t.gluing(tet, f);
            fuf.unite(4 * tet + f, 4 * g.tet + g.face);
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                vuf.unite(4 * tet + v, 4 * g.tet + g.perm(v));
                for (int u = v + 1; u < 4; ++u) {
                    if (u == f) continue;
                    int a = g.perm(v), b = g.perm(u);
                    euf.unite(6 * tet + edge_index[v][u], 6 * g.tet + edge_index[std::min(a, b)][std::max(a, b)]);
                }
            }
        }
    return {vuf.classes(), euf.classes(), fuf.classes(), k};
}

// Textbook Smith normal form over int64, row/column operations only.
inline std::vector<int64_t> naive_snf(std::vector<std::vector<int64_t>> m) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<int64_t> out;
    size_t r = 0, c = 0;
    while (r < rows && c < cols) {
        size_t pr = r, pc = c;
        bool found = false;
        for (size_t i = r; i < rows; ++i)
            for (size_t j = c; j < cols; ++j)
                if (m[i][j] != 0 && (!found || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
                    pr = i;
                    pc = j;
                    found = true;
                }
        if (!found) break;
        std::swap(m[r], m[pr]);
        for (auto& row : m) std::swap(row[c], row[pc]);
        bool again = false;
        for (size_t i = r + 1; i < rows; ++i)
            if (m[i][c] % m[r][c] != 0) again = true;
        for (size_t j = c + 1; j < cols; ++j)
            if (m[r][j] % m[r][c] != 0) again = true;
        for (size_t i = r + 1; i < rows; ++i) {
            int64_t q = m[i][c] / m[r][c];
            for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        }
        for (size_t j = c + 1; j < cols; ++j) {
            int64_t q = m[r][j] / m[r][c];
            for (size_t i = 0; i < rows; ++i) m[i][j] -= q * m[i][c];
        }
        bool zeroed = true;
        for (size_t i = r + 1; i < rows; ++i)
            if (m[i][c] != 0) zeroed = false;
        for (size_t j = c + 1; j < cols; ++j)
            if (m[r][j] != 0) zeroed = false;
        if (!zeroed || again) continue;
        out.push_back(std::llabs(m[r][c]));
        ++r;
        ++c;
    }
    for (size_t i = 0; i + 1 < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (out[j] % out[i] != 0) {
                int64_t g = std::gcd(out[i], out[j]);
                int64_t l = out[i] / g * out[j];
                out[i] = g;
                out[j] = l;
            }
    std::sort(out.begin(), out.end());
    return out;
}

// Cayley-Menger determinant volume of a regular k-simplex with edge ell.
inline double cayley_menger_volume(int k, double ell) {
    int n = k + 2;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, ell * ell));
    for (int i = 0; i < n; ++i) m[i][i] = 0.0;
    for (int i = 1; i < n; ++i) m[0][i] = m[i][0] = 1.0;
    // Gaussian elimination determinant.
    double det = 1.0;
    for (int i = 0; i < n; ++i) {
        int pivot = i;
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(m[j][i]) > std::fabs(m[pivot][i])) pivot = j;
        if (m[pivot][i] == 0.0) return 0.0;
        if (pivot != i) {
            std::swap(m[pivot], m[i]);
            det = -det;
        }
        det *= m[i][i];
        for (int j = i + 1; j < n; ++j) {
            double f = m[j][i] / m[i][i];
            for (int c = i; c < n; ++c) m[j][c] -= f * m[i][c];
        }
    }
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    double denom = fact * fact * std::pow(2.0, k);
    // V^2 = (-1)^(k+1) det(CM) / (2^k (k!)^2)
    double v2 = ((k + 1) % 2 == 0 ? 1.0 : -1.0) * det / denom;
    return std::sqrt(std::max(0.0, v2));
}

}  // namespace oracle
