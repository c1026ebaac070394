#include "regge/moves.hpp"

#include <algorithm>
#include <optional>

#include "regge/errors.hpp"

namespace regge {

namespace {

// Replaces the tetrahedra in `dying` by `new_count` fresh ones. Internal
// gluings among the new tetrahedra are given in `internal` (local indices);
// every boundary face of a dying tetrahedron must appear in `bmap`, mapping
// it to (new local tet, face) together with the label map old -> new.
struct BoundaryImage {
    int local = -1;
    int face = -1;
    Perm4 relabel;  // old tet labels -> new tet labels
};

struct Rebuild {
    std::vector<int> dying;
    int new_count = 0;
    // internal[4*local + face], absent entries are boundary faces
    std::vector<std::optional<Gluing>> internal;
    // bmap[old face slot] for faces of dying tets that touch the outside
    std::vector<std::pair<int, BoundaryImage>> bmap;
};

GluedTriangulation run_rebuild(const GluedTriangulation& t, const Rebuild& rb) {
    int k = t.tet_count();
    std::vector<char> is_dying(static_cast<size_t>(k), 0);
    for (int d : rb.dying) is_dying[static_cast<size_t>(d)] = 1;

    // Kept tetrahedra keep their relative order; new ones follow.
    std::vector<int> remap(static_cast<size_t>(k), -1);
    int next = 0;
    for (int tet = 0; tet < k; ++tet)
        if (!is_dying[static_cast<size_t>(tet)]) remap[static_cast<size_t>(tet)] = next++;
    int base = next;  // first new tet index
    int new_k = base + rb.new_count;

    std::vector<BoundaryImage> images(static_cast<size_t>(4 * k));
    for (const auto& [slot, img] : rb.bmap) images[static_cast<size_t>(slot)] = img;

    std::vector<Gluing> out(static_cast<size_t>(4 * new_k));

    // Faces of kept tetrahedra.
    for (int tet = 0; tet < k; ++tet) {
        if (is_dying[static_cast<size_t>(tet)]) continue;
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(tet, f);
            Gluing ng;
            if (!is_dying[static_cast<size_t>(g.tet)]) {
                ng = Gluing{remap[static_cast<size_t>(g.tet)], g.face, g.perm};
            } else {
                const BoundaryImage& img = images[static_cast<size_t>(4 * g.tet + g.face)];
                ng = Gluing{base + img.local, img.face, img.relabel.after(g.perm)};
            }
            out[static_cast<size_t>(4 * remap[static_cast<size_t>(tet)] + f)] = ng;
        }
    }

    // Faces of new tetrahedra: internal gluings first, then boundary faces
    // resolved through the old neighbours of the dying block.
    for (int local = 0; local < rb.new_count; ++local) {
        for (int f = 0; f < 4; ++f) {
            size_t nslot = static_cast<size_t>(4 * (base + local) + f);
            const auto& internal = rb.internal[static_cast<size_t>(4 * local + f)];
            if (internal.has_value()) {
                out[nslot] = Gluing{base + internal->tet, internal->face, internal->perm};
            }
        }
    }
    for (const auto& [slot, img] : rb.bmap) {
        int old_tet = slot / 4, old_face = slot % 4;
        const Gluing& g = t.gluing(old_tet, old_face);
        Gluing ng;
        if (!is_dying[static_cast<size_t>(g.tet)]) {
            ng = Gluing{remap[static_cast<size_t>(g.tet)], g.face,
                        g.perm.after(img.relabel.inverse())};
        } else {
            const BoundaryImage& img2 = images[static_cast<size_t>(4 * g.tet + g.face)];
            ng = Gluing{base + img2.local, img2.face,
                        img2.relabel.after(g.perm).after(img.relabel.inverse())};
        }
        out[static_cast<size_t>(4 * (base + img.local) + img.face)] = ng;
    }

    return GluedTriangulation::from_gluings(new_k, std::move(out));
}

// n_local labels for a 2-3 move: 0 = apex of t1 (vertex f1), 1 = apex of t2
// (vertex f2), 2 and 3 = the two retained triangle vertices in ascending
// t1-label order.
Perm4 rho_to_t1(int f1, int a, int b, int c) { return Perm4(f1, a, b, c); }

struct TwoThreeData {
    int t1, f1, t2, f2;
    Perm4 p;           // t1 -> t2
    int tri[3];        // triangle vertices in t1 labels, ascending
};

std::optional<TwoThreeData> two_three_site(const GluedTriangulation& t, int tet, int face) {
    const Gluing& g = t.gluing(tet, face);
    if (g.tet == tet) return std::nullopt;  // both sides in one tetrahedron
    TwoThreeData d;
    d.t1 = tet;
    d.f1 = face;
    d.t2 = g.tet;
    d.f2 = g.face;
    d.p = g.perm;
    int n = 0;
    for (int v = 0; v < 4; ++v)
        if (v != face) d.tri[n++] = v;
    return d;
}

GluedTriangulation apply_two_three(const GluedTriangulation& t, const TwoThreeData& d) {
    Rebuild rb;
    rb.dying = {d.t1, d.t2};
    std::sort(rb.dying.begin(), rb.dying.end());
    rb.new_count = 3;
    rb.internal.assign(12, std::nullopt);

    Perm4 rho[3];
    for (int i = 0; i < 3; ++i) {
        int a = d.tri[i];
        int bc[2];
        int n = 0;
        for (int j = 0; j < 3; ++j)
            if (j != i) bc[n++] = d.tri[j];
        rho[i] = rho_to_t1(d.f1, a, bc[0], bc[1]);
    }

    // Internal gluings: n_i's face opposite the label of tri[j] meets n_j.
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            int li = rho[i].inverse()(d.tri[j]);  // label of tri[j] inside n_i
            int lj = rho[j].inverse()(d.tri[i]);
            // Shared third triangle vertex keeps its label slot on both sides.
            int y = 0;
            for (int m = 0; m < 3; ++m)
                if (m != i && m != j) y = d.tri[m];
            int yi = rho[i].inverse()(y);
            int yj = rho[j].inverse()(y);
            int img[4];
            img[0] = 0;
            img[1] = 1;
            img[yi] = yj;
            img[li] = lj;
            rb.internal[static_cast<size_t>(4 * i + li)] =
                Gluing{j, lj, Perm4(img[0], img[1], img[2], img[3])};
        }
    }

    // Boundary: face a_i of t1 becomes face 1 of n_i; face p(a_i) of t2
    // becomes face 0 of n_i.
    for (int i = 0; i < 3; ++i) {
        int a = d.tri[i];
        rb.bmap.push_back({4 * d.t1 + a, BoundaryImage{i, 1, rho[i].inverse()}});
        Perm4 rho2 = d.p.after(rho[i]).after(Perm4::transposition(0, 1));
        rb.bmap.push_back({4 * d.t2 + d.p(a), BoundaryImage{i, 0, rho2.inverse()}});
    }
    return run_rebuild(t, rb);
}

struct RingTet {
    int tet;
    int u, v;     // edge endpoints, consistently directed around the ring
    int enter, leave;  // faces crossed entering/leaving this tetrahedron
};

// Walks around an edge. Returns the ring when the orbit has the given
// degree, the tetrahedra are pairwise distinct and the walk closes without
// reversing the edge; otherwise nullopt.
std::optional<std::vector<RingTet>> edge_ring(const GluedTriangulation& t, int tet0, int u0,
                                              int v0, int degree) {
    std::vector<RingTet> ring;
    int tet = tet0, u = u0, v = v0;
    // Pick the two faces of tet0 containing the edge; leave through the
    // lower-indexed one for determinism.
    int others[2];
    int n = 0;
    for (int w = 0; w < 4; ++w)
        if (w != u && w != v) others[n++] = w;
    int enter = others[1], leave = others[0];
    for (int i = 0; i < degree; ++i) {
        ring.push_back(RingTet{tet, u, v, enter, leave});
        const Gluing& g = t.gluing(tet, leave);
        int ntet = g.tet;
        int nu = g.perm(u), nv = g.perm(v), nenter = g.perm(leave);
        int nleave = 0;
        for (int w = 0; w < 4; ++w)
            if (w != nu && w != nv && w != nenter) nleave = w;
        tet = ntet;
        u = nu;
        v = nv;
        enter = nenter;
        leave = nleave;
    }
    if (tet != tet0 || u != u0 || v != v0) return std::nullopt;
    for (size_t i = 0; i < ring.size(); ++i)
        for (size_t j = i + 1; j < ring.size(); ++j)
            if (ring[i].tet == ring[j].tet) return std::nullopt;
    return ring;
}

GluedTriangulation apply_three_two(const GluedTriangulation& t, const std::vector<RingTet>& ring) {
    // Two new tetrahedra: 0 = top (apex u), 1 = bottom (apex v). Label 0 is
    // the apex; labels 1..3 hold the equatorial vertices, slot i sitting on
    // the face crossed between ring tetrahedra i and i+1. Inside ring
    // tetrahedron i, slot i carries the label enter_i and slot i-1 the label
    // leave_i.
    Rebuild rb;
    for (const RingTet& r : ring) rb.dying.push_back(r.tet);
    std::sort(rb.dying.begin(), rb.dying.end());
    rb.new_count = 2;
    rb.internal.assign(8, std::nullopt);
    rb.internal[0] = Gluing{1, 0, Perm4()};
    rb.internal[4] = Gluing{0, 0, Perm4()};

    for (int i = 0; i < 3; ++i) {
        const RingTet& r = ring[static_cast<size_t>(i)];
        int slot_here = i;            // equator slot on the leave face, label enter_i
        int slot_prev = (i + 2) % 3;  // equator slot on the enter face, label leave_i
        int missing = 3 - slot_here - slot_prev;  // the slot this tetrahedron does not touch
        // Top: apex u -> 0, equator slots -> slot+1, v -> missing+1 (off-face).
        {
            int img[4];
            img[r.u] = 0;
            img[r.enter] = slot_here + 1;
            img[r.leave] = slot_prev + 1;
            img[r.v] = missing + 1;
            rb.bmap.push_back({4 * r.tet + r.v,
                               BoundaryImage{0, missing + 1, Perm4(img[0], img[1], img[2], img[3])}});
        }
        {
            int img[4];
            img[r.v] = 0;
            img[r.enter] = slot_here + 1;
            img[r.leave] = slot_prev + 1;
            img[r.u] = missing + 1;
            rb.bmap.push_back({4 * r.tet + r.u,
                               BoundaryImage{1, missing + 1, Perm4(img[0], img[1], img[2], img[3])}});
        }
    }
    return run_rebuild(t, rb);
}

GluedTriangulation apply_one_four(const GluedTriangulation& t, int tet) {
    // New tetrahedron u_f replaces face f; the fresh centre vertex sits at
    // label f of u_f, the old vertices keep their labels.
    Rebuild rb;
    rb.dying = {tet};
    rb.new_count = 4;
    rb.internal.assign(16, std::nullopt);
    for (int f = 0; f < 4; ++f) {
        for (int v = 0; v < 4; ++v) {
            if (v == f) continue;
            rb.internal[static_cast<size_t>(4 * f + v)] =
                Gluing{v, f, Perm4::transposition(f, v)};
        }
        rb.bmap.push_back({4 * tet + f, BoundaryImage{f, f, Perm4()}});
    }
    return run_rebuild(t, rb);
}

struct FourOneData {
    std::array<int, 4> tets;
    std::array<int, 4> centres;
    std::array<Perm4, 4> label_map;  // star tet labels -> new tet labels
};

// Checks the star pattern around a vertex orbit and derives the label chase.
std::optional<FourOneData> four_one_site(const GluedTriangulation& t, const QuotientSkeleton& s,
                                         int orbit) {
    auto members = s.vertex_orbit_members(orbit);
    if (members.size() != 4) return std::nullopt;
    FourOneData d;
    for (int i = 0; i < 4; ++i) {
        d.tets[static_cast<size_t>(i)] = members[static_cast<size_t>(i)][0];
        d.centres[static_cast<size_t>(i)] = members[static_cast<size_t>(i)][1];
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (d.tets[static_cast<size_t>(i)] == d.tets[static_cast<size_t>(j)]) return std::nullopt;

    auto index_of = [&](int tet) {
        for (int i = 0; i < 4; ++i)
            if (d.tets[static_cast<size_t>(i)] == tet) return i;
        return -1;
    };

    // Internal faces (those containing the centre) must pair the four star
    // tetrahedra, centre to centre, each unordered pair exactly once.
    int pair_count[4][4] = {};
    for (int i = 0; i < 4; ++i) {
        int tet = d.tets[static_cast<size_t>(i)];
        int c = d.centres[static_cast<size_t>(i)];
        for (int f = 0; f < 4; ++f) {
            if (f == c) continue;
            const Gluing& g = t.gluing(tet, f);
            int j = index_of(g.tet);
            if (j < 0 || j == i) return std::nullopt;
            if (g.perm(c) != d.centres[static_cast<size_t>(j)]) return std::nullopt;
            ++pair_count[i][j];
        }
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && pair_count[i][j] != 1) return std::nullopt;

    // Chase outer-vertex labels from tets[0] (identity on its own labels)
    // through the internal gluings until all maps are fixed.
    std::array<std::array<int, 4>, 4> m;
    for (auto& row : m) row.fill(-1);
    for (int v = 0; v < 4; ++v) m[0][static_cast<size_t>(v)] = v;  // includes centre -> its own slot
    // The one outer vertex not contained in tets[0] sits opposite the face
    // each other tetrahedron shares with tets[0]; it takes the label slot
    // freed by tets[0]'s centre.
    {
        int c0 = d.centres[0];
        for (int f = 0; f < 4; ++f) {
            if (f == c0) continue;
            const Gluing& g = t.gluing(d.tets[0], f);
            int j = index_of(g.tet);
            int& slot = m[static_cast<size_t>(j)][static_cast<size_t>(g.face)];
            if (slot == -1)
                slot = c0;
            else if (slot != c0)
                return std::nullopt;
        }
    }
    for (int pass = 0; pass < 4; ++pass) {
        for (int i = 0; i < 4; ++i) {
            int tet = d.tets[static_cast<size_t>(i)];
            int c = d.centres[static_cast<size_t>(i)];
            for (int f = 0; f < 4; ++f) {
                if (f == c) continue;
                const Gluing& g = t.gluing(tet, f);
                int j = index_of(g.tet);
                for (int y = 0; y < 4; ++y) {
                    if (y == f || y == c) continue;  // only outer labels on the shared face
                    int img = m[static_cast<size_t>(i)][static_cast<size_t>(y)];
                    if (img == -1) continue;
                    int& slot = m[static_cast<size_t>(j)][static_cast<size_t>(g.perm(y))];
                    if (slot == -1)
                        slot = img;
                    else if (slot != img)
                        return std::nullopt;
                }
            }
        }
    }
    // Fill each centre with the leftover label and check bijectivity.
    for (int i = 0; i < 4; ++i) {
        unsigned used = 0;
        int missing_label = -1;
        for (int v = 0; v < 4; ++v) {
            int img = m[static_cast<size_t>(i)][static_cast<size_t>(v)];
            if (v == d.centres[static_cast<size_t>(i)] && i != 0) continue;
            if (img == -1) return std::nullopt;
            used |= 1u << img;
        }
        if (i != 0) {
            for (int l = 0; l < 4; ++l)
                if (!(used & (1u << l))) missing_label = l;
            if (missing_label == -1) return std::nullopt;
            m[static_cast<size_t>(i)][static_cast<size_t>(d.centres[static_cast<size_t>(i)])] =
                missing_label;
        }
        Perm4 perm(m[static_cast<size_t>(i)][0], m[static_cast<size_t>(i)][1],
                   m[static_cast<size_t>(i)][2], m[static_cast<size_t>(i)][3]);
        if (!perm.is_valid()) return std::nullopt;
        d.label_map[static_cast<size_t>(i)] = perm;
    }
    // The four outer faces must land on four distinct faces of the new
    // tetrahedron.
    unsigned faces = 0;
    for (int i = 0; i < 4; ++i)
        faces |= 1u << d.label_map[static_cast<size_t>(i)](d.centres[static_cast<size_t>(i)]);
    if (faces != 0xF) return std::nullopt;
    return d;
}

GluedTriangulation apply_four_one(const GluedTriangulation& t, const FourOneData& d) {
    Rebuild rb;
    rb.dying.assign(d.tets.begin(), d.tets.end());
    std::sort(rb.dying.begin(), rb.dying.end());
    rb.new_count = 1;
    rb.internal.assign(4, std::nullopt);
    for (int i = 0; i < 4; ++i) {
        const Perm4& mi = d.label_map[static_cast<size_t>(i)];
        int c = d.centres[static_cast<size_t>(i)];
        rb.bmap.push_back({4 * d.tets[static_cast<size_t>(i)] + c, BoundaryImage{0, mi(c), mi}});
    }
    return run_rebuild(t, rb);
}

}  // namespace

const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::OneFour: return "1-4";
        case MoveKind::FourOne: return "4-1";
        case MoveKind::TwoThree: return "2-3";
        case MoveKind::ThreeTwo: return "3-2";
    }
    return "?";
}

FVectorDelta fvector_delta(MoveKind kind) {
    switch (kind) {
        case MoveKind::OneFour: return {1, 4, 6, 3};
        case MoveKind::FourOne: return {-1, -4, -6, -3};
        case MoveKind::TwoThree: return {0, 1, 2, 1};
        case MoveKind::ThreeTwo: return {0, -1, -2, -1};
    }
    return {};
}

MoveKind inverse_kind(MoveKind kind) {
    switch (kind) {
        case MoveKind::OneFour: return MoveKind::FourOne;
        case MoveKind::FourOne: return MoveKind::OneFour;
        case MoveKind::TwoThree: return MoveKind::ThreeTwo;
        case MoveKind::ThreeTwo: return MoveKind::TwoThree;
    }
    return kind;
}

std::vector<PachnerMove> enumerate_moves(const GluedTriangulation& t, const QuotientSkeleton& s,
                                         MoveKindSet kinds) {
    std::vector<PachnerMove> moves;
    uint64_t rev = t.revision();

    if (kinds & kMoveOneFour) {
        for (int tet = 0; tet < t.tet_count(); ++tet)
            moves.push_back({MoveKind::OneFour, tet, -1, -1, rev});
    }

    if (kinds & kMoveTwoThree) {
        for (int tet = 0; tet < t.tet_count(); ++tet) {
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = t.gluing(tet, f);
                if (4 * g.tet + g.face < 4 * tet + f) continue;  // one site per triangle orbit
                if (g.tet == tet) continue;
                moves.push_back({MoveKind::TwoThree, tet, f, -1, rev});
            }
        }
    }

    if (kinds & kMoveThreeTwo) {
        for (int orbit = 0; orbit < s.n1(); ++orbit) {
            if (s.edge_degree(orbit) != 3 || s.edge_reversed(orbit)) continue;
            auto [tet, u, v] = s.edge_orbit_representative(orbit);
            if (edge_ring(t, tet, u, v, 3).has_value())
                moves.push_back({MoveKind::ThreeTwo, tet, u, v, rev});
        }
    }

    if (kinds & kMoveFourOne) {
        for (int orbit = 0; orbit < s.n0(); ++orbit) {
            if (four_one_site(t, s, orbit).has_value()) {
                auto [tet, v] = s.vertex_orbit_representative(orbit);
                moves.push_back({MoveKind::FourOne, tet, v, -1, rev});
            }
        }
    }

    return moves;
}

std::vector<PachnerMove> enumerate_moves(const GluedTriangulation& t, MoveKindSet kinds) {
    QuotientSkeleton s(t);
    return enumerate_moves(t, s, kinds);
}

GluedTriangulation apply_move(const GluedTriangulation& t, const PachnerMove& m) {
    if (m.revision != t.revision())
        throw InvalidMoveError("move site is stale (revision mismatch)");

    switch (m.kind) {
        case MoveKind::OneFour: {
            if (m.tet < 0 || m.tet >= t.tet_count()) throw InvalidMoveError("1-4 site out of range");
            return apply_one_four(t, m.tet);
        }
        case MoveKind::TwoThree: {
            if (m.tet < 0 || m.tet >= t.tet_count() || m.a < 0 || m.a > 3)
                throw InvalidMoveError("2-3 site out of range");
            auto d = two_three_site(t, m.tet, m.a);
            if (!d) throw InvalidMoveError("2-3 move not valid at this triangle");
            return apply_two_three(t, *d);
        }
        case MoveKind::ThreeTwo: {
            QuotientSkeleton s(t);
            if (m.tet < 0 || m.tet >= t.tet_count()) throw InvalidMoveError("3-2 site out of range");
            int orbit = s.edge_orbit(m.tet, m.a, m.b);
            if (s.edge_degree(orbit) != 3 || s.edge_reversed(orbit))
                throw InvalidMoveError("3-2 move not valid at this edge");
            auto ring = edge_ring(t, m.tet, m.a, m.b, 3);
            if (!ring) throw InvalidMoveError("3-2 move not valid at this edge");
            return apply_three_two(t, *ring);
        }
        case MoveKind::FourOne: {
            QuotientSkeleton s(t);
            if (m.tet < 0 || m.tet >= t.tet_count()) throw InvalidMoveError("4-1 site out of range");
            auto d = four_one_site(t, s, s.vertex_orbit(m.tet, m.a));
            if (!d) throw InvalidMoveError("4-1 move not valid at this vertex");
            return apply_four_one(t, *d);
        }
    }
    throw InvalidMoveError("unknown move kind");
}

}  // namespace regge
