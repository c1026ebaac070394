#include "regge/signature.hpp"

#include <algorithm>

#include "perm_tables.hpp"
#include "regge/errors.hpp"

namespace regge {

namespace {

constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";

// Scratch state for rooted canonical traversals, reusable across roots.
struct Traversal {
    explicit Traversal(const GluedTriangulation& t)
        : t(&t),
          tb(internal::perm_tables()),
          k(t.tet_count()),
          new_index(static_cast<size_t>(t.tet_count()), -1),
          old_of(static_cast<size_t>(t.tet_count()), -1),
          rel(static_cast<size_t>(t.tet_count()), 0),
          perm_idx(static_cast<size_t>(4 * t.tet_count()), 0) {
        for (int tet = 0; tet < k; ++tet)
            for (int f = 0; f < 4; ++f)
                perm_idx[static_cast<size_t>(4 * tet + f)] =
                    static_cast<uint8_t>(t.gluing(tet, f).perm.index());
    }

    const GluedTriangulation* t;
    const internal::PermTables& tb;
    int k;
    std::vector<int> new_index, old_of;
    std::vector<uint8_t> rel;
    std::vector<uint8_t> perm_idx;

    // Builds the full record sequence for a rooted labeling.
    void build(int root, int root_perm, std::vector<uint32_t>& out) {
        std::fill(new_index.begin(), new_index.end(), -1);
        new_index[static_cast<size_t>(root)] = 0;
        old_of[0] = root;
        rel[static_cast<size_t>(root)] = static_cast<uint8_t>(root_perm);
        int discovered = 1;
        out.clear();
        for (int i = 0; i < k; ++i) {
            int told = old_of[static_cast<size_t>(i)];
            uint8_t r = rel[static_cast<size_t>(told)];
            uint8_t rinv = tb.inv[r];
            for (int f = 0; f < 4; ++f) {
                int fold = tb.app[rinv][f];
                const Gluing& g = t->gluing(told, fold);
                uint8_t p = perm_idx[static_cast<size_t>(4 * told + fold)];
                if (new_index[static_cast<size_t>(g.tet)] == -1) {
                    new_index[static_cast<size_t>(g.tet)] = discovered;
                    old_of[static_cast<size_t>(discovered)] = g.tet;
                    rel[static_cast<size_t>(g.tet)] = tb.comp[r][tb.inv[p]];
                    ++discovered;
                }
                uint8_t q = tb.comp[tb.comp[rel[static_cast<size_t>(g.tet)]][p]][rinv];
                out.push_back(static_cast<uint32_t>(
                    (new_index[static_cast<size_t>(g.tet)] * 4 + tb.app[q][f]) * 24 + q));
            }
        }
    }

    // Compares the rooted serialization against `best`, aborting at the
    // first difference. Returns -1/0/+1.
    int compare(int root, int root_perm, const std::vector<uint32_t>& best) {
        std::fill(new_index.begin(), new_index.end(), -1);
        new_index[static_cast<size_t>(root)] = 0;
        old_of[0] = root;
        rel[static_cast<size_t>(root)] = static_cast<uint8_t>(root_perm);
        int discovered = 1;
        size_t pos = 0;
        for (int i = 0; i < k; ++i) {
            int told = old_of[static_cast<size_t>(i)];
            uint8_t r = rel[static_cast<size_t>(told)];
            uint8_t rinv = tb.inv[r];
            for (int f = 0; f < 4; ++f) {
                int fold = tb.app[rinv][f];
                const Gluing& g = t->gluing(told, fold);
                uint8_t p = perm_idx[static_cast<size_t>(4 * told + fold)];
                if (new_index[static_cast<size_t>(g.tet)] == -1) {
                    new_index[static_cast<size_t>(g.tet)] = discovered;
                    old_of[static_cast<size_t>(discovered)] = g.tet;
                    rel[static_cast<size_t>(g.tet)] = tb.comp[r][tb.inv[p]];
                    ++discovered;
                }
                uint8_t q = tb.comp[tb.comp[rel[static_cast<size_t>(g.tet)]][p]][rinv];
                uint32_t rec = static_cast<uint32_t>(
                    (new_index[static_cast<size_t>(g.tet)] * 4 + tb.app[q][f]) * 24 + q);
                if (rec != best[pos]) return rec < best[pos] ? -1 : 1;
                ++pos;
            }
        }
        return 0;
    }
};

std::string encode(int k, const std::vector<uint32_t>& records) {
    uint32_t max_rec = static_cast<uint32_t>(96 * k - 1);
    int width = 1;
    for (uint32_t w = 36; w <= max_rec; w *= 36) ++width;
    std::string payload;
    payload.reserve(records.size() * static_cast<size_t>(width));
    for (uint32_t rec : records) {
        char buf[8];
        for (int i = width - 1; i >= 0; --i) {
            buf[i] = kDigits[rec % 36];
            rec /= 36;
        }
        payload.append(buf, static_cast<size_t>(width));
    }
    return "cdt1-" + std::to_string(k) + "-" + payload;
}

// Minimal serialization plus the number of rooted labelings attaining it.
std::pair<std::vector<uint32_t>, int> minimal_with_count(const GluedTriangulation& t) {
    Traversal tr(t);
    std::vector<uint32_t> best;
    tr.build(0, 0, best);
    int count = 1;
    for (int root = 0; root < t.tet_count(); ++root) {
        for (int pi = (root == 0 ? 1 : 0); pi < 24; ++pi) {
            int cmp = tr.compare(root, pi, best);
            if (cmp < 0) {
                tr.build(root, pi, best);
                count = 1;
            } else if (cmp == 0) {
                ++count;
            }
        }
    }
    return {std::move(best), count};
}

}  // namespace

std::vector<uint32_t> serialize_as_built(const GluedTriangulation& t) {
    std::vector<uint32_t> out;
    out.reserve(static_cast<size_t>(4 * t.tet_count()));
    for (int tet = 0; tet < t.tet_count(); ++tet)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = t.gluing(tet, f);
            out.push_back(static_cast<uint32_t>((g.tet * 4 + g.face) * 24 + g.perm.index()));
        }
    return out;
}

std::vector<uint32_t> minimal_serialization(const GluedTriangulation& t) {
    return minimal_with_count(t).first;
}

IsoSignature iso_signature(const GluedTriangulation& t) {
    return IsoSignature{encode(t.tet_count(), minimal_with_count(t).first)};
}

std::pair<IsoSignature, int> iso_signature_with_symmetries(const GluedTriangulation& t) {
    auto [best, count] = minimal_with_count(t);
    return {IsoSignature{encode(t.tet_count(), best)}, count};
}

GluedTriangulation decode_signature(const std::string& text) {
    if (text.rfind("cdt1-", 0) != 0) throw ParseError(1, "signature must start with 'cdt1-'");
    size_t dash = text.find('-', 5);
    if (dash == std::string::npos) throw ParseError(1, "signature missing payload separator");
    int k = 0;
    try {
        k = std::stoi(text.substr(5, dash - 5));
    } catch (const std::exception&) {
        throw ParseError(1, "bad tetrahedron count in signature");
    }
    if (k <= 0) throw ParseError(1, "bad tetrahedron count in signature");

    uint32_t max_rec = static_cast<uint32_t>(96 * k - 1);
    int width = 1;
    for (uint32_t w = 36; w <= max_rec; w *= 36) ++width;
    std::string payload = text.substr(dash + 1);
    if (payload.size() != static_cast<size_t>(4 * k * width))
        throw ParseError(1, "signature payload has wrong length");

    std::vector<Gluing> gluings(static_cast<size_t>(4 * k));
    std::vector<char> set(static_cast<size_t>(4 * k), 0);
    size_t pos = 0;
    for (int tet = 0; tet < k; ++tet) {
        for (int f = 0; f < 4; ++f) {
            uint32_t rec = 0;
            for (int i = 0; i < width; ++i) {
                const char* p =
                    std::char_traits<char>::find(kDigits, 36, payload[pos + static_cast<size_t>(i)]);
                if (!p) throw ParseError(1, "bad base-36 digit in signature payload");
                rec = rec * 36 + static_cast<uint32_t>(p - kDigits);
            }
            pos += static_cast<size_t>(width);
            if (rec > max_rec) throw ParseError(1, "signature record out of range");
            Gluing g;
            g.perm = Perm4::from_index(static_cast<int>(rec % 24));
            g.face = static_cast<int>((rec / 24) % 4);
            g.tet = static_cast<int>(rec / 96);
            size_t slot = static_cast<size_t>(4 * tet + f);
            if (set[slot] && !(gluings[slot] == g))
                throw ParseError(1, "inconsistent signature records");
            gluings[slot] = g;
            set[slot] = 1;
            size_t back = static_cast<size_t>(4 * g.tet + g.face);
            Gluing ginv{tet, f, g.perm.inverse()};
            if (set[back] && !(gluings[back] == ginv))
                throw ParseError(1, "inconsistent signature records");
            gluings[back] = ginv;
            set[back] = 1;
        }
    }
    return GluedTriangulation::from_gluings(k, std::move(gluings));
}

bool isomorphic(const GluedTriangulation& a, const GluedTriangulation& b) {
    if (a.tet_count() != b.tet_count()) return false;
    int k = a.tet_count();
    // Map tet 0 of `a` onto every rooted labeling of `b` and propagate.
    for (int root = 0; root < k; ++root) {
        for (int pi = 0; pi < 24; ++pi) {
            std::vector<int> tet_map(static_cast<size_t>(k), -1);
            std::vector<Perm4> vmap(static_cast<size_t>(k));
            tet_map[0] = root;
            vmap[0] = Perm4::from_index(pi);
            std::vector<int> stack{0};
            bool ok = true;
            while (!stack.empty() && ok) {
                int t = stack.back();
                stack.pop_back();
                for (int f = 0; f < 4; ++f) {
                    const Gluing& ga = a.gluing(t, f);
                    const Gluing& gb = b.gluing(tet_map[static_cast<size_t>(t)],
                                                vmap[static_cast<size_t>(t)](f));
                    Perm4 image = gb.perm.after(vmap[static_cast<size_t>(t)]);
                    int target = tet_map[static_cast<size_t>(ga.tet)];
                    if (target == -1) {
                        tet_map[static_cast<size_t>(ga.tet)] = gb.tet;
                        vmap[static_cast<size_t>(ga.tet)] = image.after(ga.perm.inverse());
                        stack.push_back(ga.tet);
                    } else if (target != gb.tet ||
                               !(image == vmap[static_cast<size_t>(ga.tet)].after(ga.perm))) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace regge
