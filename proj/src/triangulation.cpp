#include "regge/triangulation.hpp"

#include <atomic>
#include <cctype>
#include <sstream>

#include "regge/errors.hpp"

namespace regge {

namespace {

std::atomic<uint64_t> g_revision_counter{1};

uint64_t next_revision() { return g_revision_counter.fetch_add(1, std::memory_order_relaxed); }

}  // namespace

GluedTriangulation::GluedTriangulation(const GluedTriangulation& other)
    : tet_count_(other.tet_count_), gluings_(other.gluings_), revision_(next_revision()) {}

GluedTriangulation& GluedTriangulation::operator=(const GluedTriangulation& other) {
    tet_count_ = other.tet_count_;
    gluings_ = other.gluings_;
    revision_ = next_revision();
    return *this;
}

GluedTriangulation GluedTriangulation::from_gluings(int tet_count, std::vector<Gluing> gluings) {
    if (tet_count <= 0) throw StructureError("tetrahedron count must be positive");
    if (gluings.size() != static_cast<size_t>(4 * tet_count))
        throw StructureError("expected exactly 4K gluing records");

    for (int t = 0; t < tet_count; ++t) {
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = gluings[static_cast<size_t>(4 * t + f)];
            if (g.tet < 0 || g.tet >= tet_count || g.face < 0 || g.face > 3)
                throw StructureError("gluing target out of range at face (" + std::to_string(t) +
                                     "," + std::to_string(f) + ")");
            if (!g.perm.is_valid())
                throw StructureError("invalid permutation at face (" + std::to_string(t) + "," +
                                     std::to_string(f) + ")");
            if (g.perm(f) != g.face)
                throw StructureError("permutation does not carry face " + std::to_string(f) +
                                     " to face " + std::to_string(g.face));
            if (g.tet == t && g.face == f)
                throw StructureError("face (" + std::to_string(t) + "," + std::to_string(f) +
                                     ") glued to itself");
            const Gluing& back = gluings[static_cast<size_t>(4 * g.tet + g.face)];
            if (back.tet != t || back.face != f || !(back.perm == g.perm.inverse()))
                throw StructureError("gluing map is not an involution at face (" +
                                     std::to_string(t) + "," + std::to_string(f) + ")");
        }
    }

    // Connectivity of the face-adjacency graph.
    std::vector<char> seen(static_cast<size_t>(tet_count), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            int u = gluings[static_cast<size_t>(4 * t + f)].tet;
            if (!seen[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = 1;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    if (reached != tet_count) throw StructureError("triangulation is not connected");

    GluedTriangulation t;
    t.tet_count_ = tet_count;
    t.gluings_ = std::move(gluings);
    t.revision_ = next_revision();
    return t;
}

GluedTriangulation parse_gluing_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int tet_count = -1;
    std::vector<Gluing> gluings;
    std::vector<char> stated;

    while (std::getline(in, line)) {
        ++line_no;
        size_t pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;

        if (tok == "tets") {
            if (tet_count != -1) throw ParseError(line_no, "duplicate 'tets' header");
            if (!(ls >> tet_count) || tet_count <= 0)
                throw ParseError(line_no, "expected positive tetrahedron count after 'tets'");
            gluings.assign(static_cast<size_t>(4 * tet_count), Gluing{});
            stated.assign(static_cast<size_t>(4 * tet_count), 0);
            continue;
        }
        if (tet_count == -1) throw ParseError(line_no, "missing 'tets K' header");

        int t, f, t2, f2;
        std::string perm_str, colon;
        std::istringstream gs(line);
        if (!(gs >> t >> f >> colon >> t2 >> f2 >> perm_str) || colon != ":")
            throw ParseError(line_no, "expected 't f : t' f' p0p1p2p3'");
        std::string extra;
        if (gs >> extra) throw ParseError(line_no, "trailing tokens after gluing");
        if (t < 0 || t >= tet_count || t2 < 0 || t2 >= tet_count)
            throw ParseError(line_no, "tetrahedron index out of range");
        if (f < 0 || f > 3 || f2 < 0 || f2 > 3) throw ParseError(line_no, "face index out of range");
        if (perm_str.size() != 4) throw ParseError(line_no, "permutation must be 4 digits");
        Perm4 p(perm_str[0] - '0', perm_str[1] - '0', perm_str[2] - '0', perm_str[3] - '0');
        if (!p.is_valid()) throw ParseError(line_no, "not a permutation of 0123: " + perm_str);
        if (p(f) != f2)
            throw ParseError(line_no, "permutation does not carry face " + std::to_string(f) +
                                          " to face " + std::to_string(f2));
        if (t == t2 && f == f2)
            throw ParseError(line_no, "face (" + std::to_string(t) + "," + std::to_string(f) +
                                          ") glued to itself");

        auto put = [&](int tt, int ff, const Gluing& g) {
            size_t slot = static_cast<size_t>(4 * tt + ff);
            if (stated[slot]) {
                if (!(gluings[slot] == g))
                    throw ParseError(line_no, "face (" + std::to_string(tt) + "," +
                                                  std::to_string(ff) + ") glued twice inconsistently");
            } else {
                stated[slot] = 1;
                gluings[slot] = g;
            }
        };
        put(t, f, Gluing{t2, f2, p});
        put(t2, f2, Gluing{t, f, p.inverse()});
    }

    if (tet_count == -1) throw ParseError(line_no, "missing 'tets K' header");
    for (int t = 0; t < tet_count; ++t)
        for (int f = 0; f < 4; ++f)
            if (!stated[static_cast<size_t>(4 * t + f)])
                throw ParseError(line_no, "unglued face (" + std::to_string(t) + "," +
                                              std::to_string(f) + ")");

    return GluedTriangulation::from_gluings(tet_count, std::move(gluings));
}

std::string to_gluing_text(const GluedTriangulation& t) {
    std::ostringstream out;
    out << "tets " << t.tet_count() << "\n";
    for (int tet = 0; tet < t.tet_count(); ++tet) {
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(tet, f);
            // Emit each pair once, from its lower face slot.
            if (4 * g.tet + g.face < 4 * tet + f) continue;
            out << tet << " " << f << " : " << g.tet << " " << g.face << " " << g.perm.one_line()
                << "\n";
        }
    }
    return out.str();
}

GluedTriangulation relabel(const GluedTriangulation& t, std::span<const int> tet_order,
                           std::span<const Perm4> vertex_maps) {
    int k = t.tet_count();
    std::vector<Gluing> out(static_cast<size_t>(4 * k));
    for (int tet = 0; tet < k; ++tet) {
        const Perm4& r = vertex_maps[static_cast<size_t>(tet)];
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(tet, f);
            const Perm4& r2 = vertex_maps[static_cast<size_t>(g.tet)];
            Gluing ng;
            ng.tet = tet_order[static_cast<size_t>(g.tet)];
            ng.face = r2(g.face);
            ng.perm = r2.after(g.perm).after(r.inverse());
            out[static_cast<size_t>(4 * tet_order[static_cast<size_t>(tet)] + r(f))] = ng;
        }
    }
    return GluedTriangulation::from_gluings(k, std::move(out));
}

GluedTriangulation boundary_4_simplex() {
    // Tetrahedron i spans the global vertices {0..4} \ {i}, labeled in
    // ascending order. Tetrahedra i and j share the triangle missing both.
    auto global_of = [](int tet, int local) { return local < tet ? local : local + 1; };
    auto local_of = [](int tet, int global) { return global < tet ? global : global - 1; };

    std::vector<Gluing> gluings(20);
    for (int i = 0; i < 5; ++i) {
        for (int f = 0; f < 4; ++f) {
            int g = global_of(i, f);  // vertex opposite this face; also the partner tet
            Gluing gl;
            gl.tet = g;
            gl.face = local_of(g, i);
            int img[4];
            for (int l = 0; l < 4; ++l)
                img[l] = (l == f) ? gl.face : local_of(g, global_of(i, l));
            gl.perm = Perm4(img[0], img[1], img[2], img[3]);
            gluings[static_cast<size_t>(4 * i + f)] = gl;
        }
    }
    return GluedTriangulation::from_gluings(5, std::move(gluings));
}

GluedTriangulation doubled_tetrahedron() {
    std::vector<Gluing> gluings(8);
    for (int f = 0; f < 4; ++f) {
        gluings[static_cast<size_t>(f)] = Gluing{1, f, Perm4()};
        gluings[static_cast<size_t>(4 + f)] = Gluing{0, f, Perm4()};
    }
    return GluedTriangulation::from_gluings(2, std::move(gluings));
}

}  // namespace regge
