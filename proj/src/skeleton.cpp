#include "regge/skeleton.hpp"

#include <algorithm>

namespace regge {

namespace {

// Plain union-find with path compression.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// Compacts union-find roots into orbit ids 0..n-1 ordered by lowest slot.
int compact(UnionFind& uf, std::vector<int>& out) {
    int n = static_cast<int>(uf.parent.size());
    out.assign(static_cast<size_t>(n), -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        if (out[static_cast<size_t>(r)] == -1) out[static_cast<size_t>(r)] = next++;
        out[static_cast<size_t>(i)] = out[static_cast<size_t>(r)];
    }
    return next;
}

constexpr int kEdgeIndex[4][4] = {
    {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
constexpr int kEdgeVerts[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

}  // namespace

int tet_edge_index(int u, int v) { return kEdgeIndex[u][v]; }
std::array<int, 2> tet_edge_vertices(int e) { return {kEdgeVerts[e][0], kEdgeVerts[e][1]}; }

QuotientSkeleton::QuotientSkeleton(const GluedTriangulation& t) : t_(&t) {
    int k = t.tet_count();
    n3_ = k;

    UnionFind vuf(4 * k);
    UnionFind euf(6 * k);
    UnionFind duf(16 * k);
    UnionFind fuf(4 * k);

    for (int tet = 0; tet < k; ++tet) {
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(tet, f);
            fuf.unite(4 * tet + f, 4 * g.tet + g.face);
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                vuf.unite(4 * tet + v, 4 * g.tet + g.perm(v));
                for (int u = 0; u < 4; ++u) {
                    if (u == f || u == v) continue;
                    duf.unite(16 * tet + 4 * u + v, 16 * g.tet + 4 * g.perm(u) + g.perm(v));
                    if (u < v) euf.unite(6 * tet + tet_edge_index(u, v),
                                         6 * g.tet + tet_edge_index(g.perm(u), g.perm(v)));
                }
            }
        }
    }

    n0_ = compact(vuf, vertex_orbit_);
    n1_ = compact(euf, edge_orbit_);
    n2_ = compact(fuf, tri_orbit_);

    // Directed classes, skipping the unused diagonal slots.
    dir_class_.assign(static_cast<size_t>(16 * k), -1);
    {
        std::vector<int> root_id(static_cast<size_t>(16 * k), -1);
        int next = 0;
        for (int tet = 0; tet < k; ++tet)
            for (int u = 0; u < 4; ++u)
                for (int v = 0; v < 4; ++v) {
                    if (u == v) continue;
                    int slot = 16 * tet + 4 * u + v;
                    int r = duf.find(slot);
                    if (root_id[static_cast<size_t>(r)] == -1) root_id[static_cast<size_t>(r)] = next++;
                    dir_class_[static_cast<size_t>(slot)] = root_id[static_cast<size_t>(r)];
                }
    }

    edge_degree_.assign(static_cast<size_t>(n1_), 0);
    edge_reversed_.assign(static_cast<size_t>(n1_), 0);
    edge_ref_class_.assign(static_cast<size_t>(n1_), -1);
    for (int tet = 0; tet < k; ++tet) {
        for (int e = 0; e < 6; ++e) {
            int orbit = edge_orbit_[static_cast<size_t>(6 * tet + e)];
            ++edge_degree_[static_cast<size_t>(orbit)];
            auto [u, v] = tet_edge_vertices(e);
            int fwd = dir_class_[static_cast<size_t>(16 * tet + 4 * u + v)];
            int rev = dir_class_[static_cast<size_t>(16 * tet + 4 * v + u)];
            if (fwd == rev) edge_reversed_[static_cast<size_t>(orbit)] = 1;
            if (edge_ref_class_[static_cast<size_t>(orbit)] == -1)
                edge_ref_class_[static_cast<size_t>(orbit)] = fwd;
        }
    }
}

int QuotientSkeleton::edge_sign(int tet, int u, int v) const {
    int orbit = edge_orbit(tet, u, v);
    return directed_class(tet, u, v) == edge_ref_class_[static_cast<size_t>(orbit)] ? 1 : -1;
}

std::vector<std::array<int, 2>> QuotientSkeleton::vertex_orbit_members(int orbit) const {
    std::vector<std::array<int, 2>> out;
    for (int tet = 0; tet < n3_; ++tet)
        for (int v = 0; v < 4; ++v)
            if (vertex_orbit(tet, v) == orbit) out.push_back({tet, v});
    return out;
}

std::vector<std::array<int, 3>> QuotientSkeleton::edge_orbit_members(int orbit) const {
    std::vector<std::array<int, 3>> out;
    for (int tet = 0; tet < n3_; ++tet)
        for (int e = 0; e < 6; ++e)
            if (edge_orbit_[static_cast<size_t>(6 * tet + e)] == orbit) {
                auto [u, v] = tet_edge_vertices(e);
                if (edge_sign(tet, u, v) < 0) std::swap(u, v);
                out.push_back({tet, u, v});
            }
    return out;
}

std::array<int, 3> QuotientSkeleton::edge_orbit_representative(int orbit) const {
    for (int tet = 0; tet < n3_; ++tet)
        for (int e = 0; e < 6; ++e)
            if (edge_orbit_[static_cast<size_t>(6 * tet + e)] == orbit) {
                auto [u, v] = tet_edge_vertices(e);
                if (edge_sign(tet, u, v) < 0) std::swap(u, v);
                return {tet, u, v};
            }
    return {-1, -1, -1};
}

std::array<int, 2> QuotientSkeleton::triangle_orbit_representative(int orbit) const {
    for (int tet = 0; tet < n3_; ++tet)
        for (int f = 0; f < 4; ++f)
            if (triangle_orbit(tet, f) == orbit) return {tet, f};
    return {-1, -1};
}

std::array<int, 2> QuotientSkeleton::vertex_orbit_representative(int orbit) const {
    for (int tet = 0; tet < n3_; ++tet)
        for (int v = 0; v < 4; ++v)
            if (vertex_orbit(tet, v) == orbit) return {tet, v};
    return {-1, -1};
}

int64_t QuotientSkeleton::degree_sum() const {
    int64_t s = 0;
    for (int d : edge_degree_) s += d;
    return s;
}

QuotientSkeleton skeleton(const GluedTriangulation& t) { return QuotientSkeleton(t); }

RationalMu mean_bone_degree(const QuotientSkeleton& s) {
    return RationalMu{6 * static_cast<int64_t>(s.n3()), static_cast<int64_t>(s.n1())};
}

RationalMu mean_bone_degree(const GluedTriangulation& t) {
    return mean_bone_degree(QuotientSkeleton(t));
}

}  // namespace regge
