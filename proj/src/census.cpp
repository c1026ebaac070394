#include "regge/census.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "perm_tables.hpp"
#include "regge/errors.hpp"
#include "regge/moves.hpp"
#include "regge/simplicial.hpp"
#include "regge/rng.hpp"
#include "regge/validation.hpp"

namespace regge {

namespace {

// ---------------------------------------------------------------------------
// Enumeration search. Faces are bound in scan order (lowest unglued face
// first). Gluing a face to a not-yet-used tetrahedron always uses the same
// face index and the identity permutation, which is exactly the normal form
// produced by the canonical rooted traversal, so the canonical labeling of
// every class is generated and the emit test (as-built == minimal
// serialization) fires exactly once per class.
//
// Incremental pruning: an edge identified with itself reversed kills the
// branch, and every vertex whose link closes must have Euler characteristic
// 2 (links are connected by construction).
// ---------------------------------------------------------------------------

struct UndoOp {
    enum Type : uint8_t { Union, VGlued, VCorner } type;
    uint8_t which;  // 0 = vertex uf, 1 = directed uf
    int a;          // child root (Union) or vertex root (counters)
    int b;          // parent root (Union) or delta (counters)
};

class Searcher {
public:
    Searcher(int k, int thread_count, int thread_id)
        : tb_(internal::perm_tables()), k_(k), thread_count_(thread_count), thread_id_(thread_id) {
        partner_.assign(static_cast<size_t>(4 * k), -1);
        perm_.assign(static_cast<size_t>(4 * k), 0);
        vparent_.resize(static_cast<size_t>(4 * k));
        vsize_.assign(static_cast<size_t>(4 * k), 1);
        vglued_.assign(static_cast<size_t>(4 * k), 0);
        vcorners_.assign(static_cast<size_t>(4 * k), 3);
        for (int i = 0; i < 4 * k; ++i) vparent_[static_cast<size_t>(i)] = i;
        dparent_.resize(static_cast<size_t>(16 * k));
        dsize_.assign(static_cast<size_t>(16 * k), 1);
        for (int i = 0; i < 16 * k; ++i) dparent_[static_cast<size_t>(i)] = i;
        // The six permutation indices carrying face f to face f2.
        for (int f = 0; f < 4; ++f)
            for (int f2 = 0; f2 < 4; ++f2) {
                int n = 0;
                for (int pi = 0; pi < 24 && n < 6; ++pi)
                    if (tb_.app[pi][f] == f2) face_perms_[f][f2][n++] = static_cast<uint8_t>(pi);
            }
        new_index_.assign(static_cast<size_t>(k), -1);
        old_of_.assign(static_cast<size_t>(k), -1);
        rel_.assign(static_cast<size_t>(k), 0);
    }

    std::vector<GluedTriangulation> run() {
        used_ = 1;
        live_stack_.assign(static_cast<size_t>(8 * k_ + 2), {});
        auto& root_live = live_stack_[0];
        for (int pi = 0; pi < 24; ++pi) root_live.push_back(static_cast<uint16_t>(pi));
        descend(0, 0);
        return std::move(out_);
    }

private:
    int vfind(int x) const {
        while (vparent_[static_cast<size_t>(x)] != x) x = vparent_[static_cast<size_t>(x)];
        return x;
    }
    int dfind(int x) const {
        while (dparent_[static_cast<size_t>(x)] != x) x = dparent_[static_cast<size_t>(x)];
        return x;
    }

    void vunite(int a, int b) {
        a = vfind(a);
        b = vfind(b);
        if (a == b) return;
        if (vsize_[static_cast<size_t>(a)] < vsize_[static_cast<size_t>(b)]) std::swap(a, b);
        vparent_[static_cast<size_t>(b)] = a;
        vsize_[static_cast<size_t>(a)] += vsize_[static_cast<size_t>(b)];
        vglued_[static_cast<size_t>(a)] += vglued_[static_cast<size_t>(b)];
        vcorners_[static_cast<size_t>(a)] += vcorners_[static_cast<size_t>(b)];
        undo_.push_back({UndoOp::Union, 0, b, a});
    }

    // Directed-edge union; both corners belong to the same (already united)
    // vertex orbit, whose corner count drops by one on a real merge.
    void dunite(int a, int b, int corner_vertex_slot) {
        a = dfind(a);
        b = dfind(b);
        if (a == b) return;
        if (dsize_[static_cast<size_t>(a)] < dsize_[static_cast<size_t>(b)]) std::swap(a, b);
        dparent_[static_cast<size_t>(b)] = a;
        dsize_[static_cast<size_t>(a)] += dsize_[static_cast<size_t>(b)];
        undo_.push_back({UndoOp::Union, 1, b, a});
        int r = vfind(corner_vertex_slot);
        vcorners_[static_cast<size_t>(r)] -= 1;
        undo_.push_back({UndoOp::VCorner, 0, r, -1});
    }

    void rollback(size_t mark) {
        while (undo_.size() > mark) {
            UndoOp op = undo_.back();
            undo_.pop_back();
            switch (op.type) {
                case UndoOp::Union:
                    if (op.which == 0) {
                        vparent_[static_cast<size_t>(op.a)] = op.a;
                        vsize_[static_cast<size_t>(op.b)] -= vsize_[static_cast<size_t>(op.a)];
                        vglued_[static_cast<size_t>(op.b)] -= vglued_[static_cast<size_t>(op.a)];
                        vcorners_[static_cast<size_t>(op.b)] -= vcorners_[static_cast<size_t>(op.a)];
                    } else {
                        dparent_[static_cast<size_t>(op.a)] = op.a;
                        dsize_[static_cast<size_t>(op.b)] -= dsize_[static_cast<size_t>(op.a)];
                    }
                    break;
                case UndoOp::VGlued:
                    vglued_[static_cast<size_t>(op.a)] -= op.b;
                    break;
                case UndoOp::VCorner:
                    vcorners_[static_cast<size_t>(op.a)] -= op.b;
                    break;
            }
        }
    }

    int dslot(int tet, int u, int v) const { return 16 * tet + 4 * u + v; }

    // Applies the gluing (t,f) <-> (t2,f2,p) to the incremental structures.
    // Returns false when the branch must be pruned.
    bool bind(int t, int f, int t2, int f2, int pidx) {
        partner_[static_cast<size_t>(4 * t + f)] = 4 * t2 + f2;
        partner_[static_cast<size_t>(4 * t2 + f2)] = 4 * t + f;
        perm_[static_cast<size_t>(4 * t + f)] = static_cast<uint8_t>(pidx);
        perm_[static_cast<size_t>(4 * t2 + f2)] = tb_.inv[pidx];
        const uint8_t* ap = tb_.app[pidx];

        for (int v = 0; v < 4; ++v) {
            if (v == f) continue;
            vunite(4 * t + v, 4 * t2 + ap[v]);
        }
        for (int u = 0; u < 4; ++u) {
            if (u == f) continue;
            for (int v = 0; v < 4; ++v) {
                if (v == f || v == u) continue;
                dunite(dslot(t, u, v), dslot(t2, ap[u], ap[v]), 4 * t + u);
            }
        }
        // Reversal prune on the three edges of the glued face.
        for (int u = 0; u < 4; ++u) {
            if (u == f) continue;
            for (int v = u + 1; v < 4; ++v) {
                if (v == f) continue;
                if (dfind(dslot(t, u, v)) == dfind(dslot(t, v, u))) return false;
            }
        }
        // Link side bookkeeping and closure check.
        for (int v = 0; v < 4; ++v) {
            if (v == f) continue;
            int r = vfind(4 * t + v);
            vglued_[static_cast<size_t>(r)] += 2;
            undo_.push_back({UndoOp::VGlued, 0, r, 2});
        }
        for (int v = 0; v < 4; ++v) {
            if (v == f) continue;
            int r = vfind(4 * t + v);
            if (vglued_[static_cast<size_t>(r)] == 3 * vsize_[static_cast<size_t>(r)]) {
                // Link closed: Euler characteristic = corners - 3F/2 + F.
                int f_count = vsize_[static_cast<size_t>(r)];
                int euler = vcorners_[static_cast<size_t>(r)] - (3 * f_count) / 2 + f_count;
                if (euler != 2) return false;
            }
        }
        return true;
    }

    void unbind(int t, int f) {
        int mate = partner_[static_cast<size_t>(4 * t + f)];
        partner_[static_cast<size_t>(mate)] = -1;
        partner_[static_cast<size_t>(4 * t + f)] = -1;
    }

    void descend(int depth, int scan_from) {
        // Lowest unglued face among used tetrahedra.
        int slot = -1;
        for (int s = scan_from; s < 4 * used_; ++s) {
            if (partner_[static_cast<size_t>(s)] == -1) {
                slot = s;
                break;
            }
        }
        if (slot == -1) {
            if (used_ == k_) emit();
            return;  // all faces of used tets glued; unused tets are unreachable
        }
        int t = slot / 4, f = slot % 4;

        // Option: open a fresh tetrahedron (identity gluing, same face).
        if (used_ < k_) {
            if (depth != 0 || thread_id_ == branch_counter_ % thread_count_) {
                size_t mark = undo_.size();
                int nt = used_;
                ++used_;
                if (bind(t, f, nt, f, 0) && advance_live(depth, nt))
                    descend(depth + 1, slot + 1);
                rollback(mark);
                unbind(t, f);
                --used_;
            }
            if (depth == 0) ++branch_counter_;
        }

        // Option: glue to a later unglued face of a used tetrahedron. A
        // self-gluing is only canonical when face (0,0) itself is
        // self-glued: rooting the traversal at any self-glued tetrahedron
        // yields a first record below the new-tetrahedron record.
        bool root_self = partner_[0] != -1 && partner_[0] / 4 == 0;
        for (int s2 = slot + 1; s2 < 4 * used_; ++s2) {
            if (partner_[static_cast<size_t>(s2)] != -1) continue;
            int t2 = s2 / 4, f2 = s2 % 4;
            if (t2 == t && !(slot == 0 || root_self)) continue;
            for (uint8_t pidx : face_perms_[f][f2]) {
                if (depth == 0) {
                    bool mine = thread_id_ == branch_counter_ % thread_count_;
                    ++branch_counter_;
                    if (!mine) continue;
                }
                size_t mark = undo_.size();
                if (bind(t, f, t2, f2, pidx) && advance_live(depth, -1))
                    descend(depth + 1, slot + 1);
                rollback(mark);
                unbind(t, f);
            }
        }
    }

    // Re-examines the parent's still-tied rooted labelings (plus those of a
    // freshly opened tetrahedron) against the extended assignment. Records
    // only ever get filled along a branch, so candidates that compare
    // "greater" stay greater and are dropped for the whole subtree.
    // Returns false when some rooted labeling strictly precedes as-built.
    bool advance_live(int depth, int fresh_tet) {
        const auto& parent = live_stack_[static_cast<size_t>(depth)];
        auto& child = live_stack_[static_cast<size_t>(depth + 1)];
        child.clear();
        for (uint16_t cand : parent) {
            int cmp = compare_rooted(cand / 24, cand % 24);
            if (cmp < 0) return false;
            if (cmp == 0) child.push_back(cand);
        }
        if (fresh_tet >= 0) {
            for (int pi = 0; pi < 24; ++pi) {
                uint16_t cand = static_cast<uint16_t>(fresh_tet * 24 + pi);
                int cmp = compare_rooted(fresh_tet, pi);
                if (cmp < 0) return false;
                if (cmp == 0) child.push_back(cand);
            }
        }
        return true;
    }

    // Compares the rooted traversal serialization against the as-built one,
    // record by record, aborting as soon as the order is decided. On a
    // partial assignment the comparison stops, inconclusive, at the first
    // missing record on either side (records over assigned faces are final,
    // so a strict "smaller" verdict survives any completion).
    // Returns -1 / 0 / +1 for rooted < / inconclusive-or-equal / > as-built.
    int compare_rooted(int root, int root_perm) {
        std::fill(new_index_.begin(), new_index_.end(), -1);
        new_index_[static_cast<size_t>(root)] = 0;
        old_of_[0] = root;
        rel_[static_cast<size_t>(root)] = static_cast<uint8_t>(root_perm);
        int discovered = 1;
        for (int i = 0; i < discovered; ++i) {
            int told = old_of_[static_cast<size_t>(i)];
            uint8_t r = rel_[static_cast<size_t>(told)];
            uint8_t rinv = tb_.inv[r];
            for (int f = 0; f < 4; ++f) {
                int slot = 4 * i + f;
                int built_mate = partner_[static_cast<size_t>(slot)];
                if (built_mate == -1) return 0;
                int fold = tb_.app[rinv][f];
                int mate = partner_[static_cast<size_t>(4 * told + fold)];
                if (mate == -1) return 0;
                int t2 = mate / 4;
                uint8_t p = perm_[static_cast<size_t>(4 * told + fold)];
                if (new_index_[static_cast<size_t>(t2)] == -1) {
                    new_index_[static_cast<size_t>(t2)] = discovered;
                    old_of_[static_cast<size_t>(discovered)] = t2;
                    rel_[static_cast<size_t>(t2)] = tb_.comp[r][tb_.inv[p]];
                    ++discovered;
                }
                uint8_t q = tb_.comp[tb_.comp[rel_[static_cast<size_t>(t2)]][p]][rinv];
                uint32_t rec = static_cast<uint32_t>(
                    (new_index_[static_cast<size_t>(t2)] * 4 + tb_.app[q][f]) * 24 + q);
                uint32_t built = static_cast<uint32_t>(built_mate) * 24 +
                                 static_cast<uint32_t>(perm_[static_cast<size_t>(slot)]);
                if (rec != built) return rec < built ? -1 : 1;
            }
        }
        return 0;
    }

    void emit() {
        // The gate on the final bind already ran the full canonical check.
        std::vector<Gluing> gluings(static_cast<size_t>(4 * k_));
        for (int s = 0; s < 4 * k_; ++s) {
            int mate = partner_[static_cast<size_t>(s)];
            gluings[static_cast<size_t>(s)] =
                Gluing{mate / 4, mate % 4, Perm4::from_index(perm_[static_cast<size_t>(s)])};
        }
        out_.push_back(GluedTriangulation::from_gluings(k_, std::move(gluings)));
    }

    const internal::PermTables& tb_;
    int k_;
    int thread_count_;
    int thread_id_;
    int used_ = 1;
    int64_t branch_counter_ = 0;
    std::vector<int> partner_;
    std::vector<uint8_t> perm_;
    uint8_t face_perms_[4][4][6];

    std::vector<int> vparent_, vsize_, vglued_, vcorners_;
    std::vector<int> dparent_, dsize_;
    std::vector<UndoOp> undo_;
    std::vector<GluedTriangulation> out_;
    // compare_rooted scratch
    std::vector<int> new_index_, old_of_;
    std::vector<uint8_t> rel_;
    std::vector<std::vector<uint16_t>> live_stack_;
};

}  // namespace

std::vector<GluedTriangulation> enumerate_all(int k, const CensusOptions& opts) {
    if (k < 1) throw DomainError("tetrahedron count must be positive");
    int threads = std::max(1, opts.threads);
    std::vector<std::vector<GluedTriangulation>> parts(static_cast<size_t>(threads));
    if (threads == 1) {
        Searcher s(k, 1, 0);
        parts[0] = s.run();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i)
            pool.emplace_back([&, i] {
                Searcher s(k, threads, i);
                parts[static_cast<size_t>(i)] = s.run();
            });
        for (auto& th : pool) th.join();
    }
    std::vector<GluedTriangulation> all;
    for (auto& part : parts)
        for (auto& t : part) all.push_back(std::move(t));
    std::sort(all.begin(), all.end(), [](const GluedTriangulation& a, const GluedTriangulation& b) {
        return serialize_as_built(a) < serialize_as_built(b);
    });
    return all;
}

std::vector<GluedTriangulation> enumerate_brute_force(int k) {
    if (k < 1 || k > 2) throw DomainError("brute-force enumeration is only for K <= 2");
    std::vector<GluedTriangulation> found;
    std::vector<Gluing> gluings(static_cast<size_t>(4 * k));
    std::vector<int> partner(static_cast<size_t>(4 * k), -1);
    std::vector<Perm4> perm(static_cast<size_t>(4 * k));

    // All pairings of the 4K faces, all permutations, no pruning.
    std::function<void()> rec = [&]() {
        int slot = -1;
        for (int s = 0; s < 4 * k; ++s)
            if (partner[static_cast<size_t>(s)] == -1) {
                slot = s;
                break;
            }
        if (slot == -1) {
            for (int s = 0; s < 4 * k; ++s)
                gluings[static_cast<size_t>(s)] =
                    Gluing{partner[static_cast<size_t>(s)] / 4, partner[static_cast<size_t>(s)] % 4,
                           perm[static_cast<size_t>(s)]};
            try {
                GluedTriangulation t = GluedTriangulation::from_gluings(k, gluings);
                if (!validate_manifold(t).valid) return;
                for (const GluedTriangulation& seen : found)
                    if (isomorphic(t, seen)) return;
                found.push_back(std::move(t));
            } catch (const StructureError&) {
                // disconnected assembly
            }
            return;
        }
        int f = slot % 4;
        for (int s2 = slot + 1; s2 < 4 * k; ++s2) {
            if (partner[static_cast<size_t>(s2)] != -1) continue;
            int f2 = s2 % 4;
            for (int pi = 0; pi < 24; ++pi) {
                Perm4 p = Perm4::from_index(pi);
                if (p(f) != f2) continue;
                partner[static_cast<size_t>(slot)] = s2;
                partner[static_cast<size_t>(s2)] = slot;
                perm[static_cast<size_t>(slot)] = p;
                perm[static_cast<size_t>(s2)] = p.inverse();
                rec();
                partner[static_cast<size_t>(slot)] = -1;
                partner[static_cast<size_t>(s2)] = -1;
            }
        }
    };
    rec();
    return found;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

const std::set<std::string>& sphere_catalog() {
    static const std::set<std::string> catalog = [] {
        std::set<std::string> sigs;
        for (int k = 1; k <= 2; ++k) {
            for (const GluedTriangulation& t : enumerate_all(k)) {
                if (homology_h1(t).trivial()) sigs.insert(iso_signature(t).text);
            }
        }
        sigs.insert(iso_signature(boundary_4_simplex()).text);
        return sigs;
    }();
    return catalog;
}

bool simplify_to_catalog(const GluedTriangulation& t0, const CensusOptions& opts) {
    const std::set<std::string>& catalog = sphere_catalog();
    auto in_catalog = [&](const GluedTriangulation& t) {
        return t.tet_count() <= 5 && catalog.count(iso_signature(t).text) > 0;
    };
    if (in_catalog(t0)) return true;
    int cap = t0.tet_count() + 6;
    for (int restart = 0; restart < opts.simplify_restarts; ++restart) {
        Rng rng(derive_seed(opts.seed, static_cast<uint64_t>(restart)));
        GluedTriangulation t = t0;
        int64_t budget = opts.simplify_steps;
        while (budget > 0) {
            // Greedy descent: volume strictly decreases, so no cycling here.
            for (;;) {
                if (in_catalog(t)) return true;
                auto shrink = enumerate_moves(t, kMoveThreeTwo | kMoveFourOne);
                if (shrink.empty() || budget <= 0) break;
                t = apply_move(t, shrink[rng.below(shrink.size())]);
                --budget;
            }
            if (in_catalog(t)) return true;
            // Stuck: a burst of random 2-3 moves before descending again.
            // Single alternating grow/shrink steps just undo each other.
            int burst = 1 + static_cast<int>(rng.below(4));
            for (int j = 0; j < burst && budget > 0 && t.tet_count() < cap; ++j) {
                auto grow = enumerate_moves(t, kMoveTwoThree);
                if (grow.empty()) break;
                t = apply_move(t, grow[rng.below(grow.size())]);
                --budget;
            }
        }
    }
    return false;
}

}  // namespace

std::string ManifoldClass::to_string() const {
    switch (label) {
        case Label::S3Confirmed: return "S3";
        case Label::TrivialH1Unresolved: return "unresolved";
        case Label::Other: return "other:" + h1.to_string();
        case Label::Unclassified: return "unclassified";
    }
    return "unclassified";
}

ManifoldClass classify_manifold(const GluedTriangulation& t, const CensusOptions& opts) {
    ManifoldClass out;
    out.h1 = homology_h1(t);
    if (!out.h1.trivial()) {
        out.label = ManifoldClass::Label::Other;
        return out;
    }
    out.label = simplify_to_catalog(t, opts) ? ManifoldClass::Label::S3Confirmed
                                             : ManifoldClass::Label::TrivialH1Unresolved;
    return out;
}

// ---------------------------------------------------------------------------
// Histograms and files
// ---------------------------------------------------------------------------

void DegeneracyHistogram::add(const HistogramKey& key, int64_t count) {
    if (count < 0) throw DomainError("histogram counts must be nonnegative");
    entries_[key] += count;
}

std::map<std::pair<int, int>, int64_t> DegeneracyHistogram::slice(const HistogramSlice& s) const {
    std::map<std::pair<int, int>, int64_t> out;
    for (const auto& [key, count] : entries_) {
        if (s.cls && key.cls != *s.cls) continue;
        if (s.orientable && key.orientable != (*s.orientable ? 1 : 0)) continue;
        if (s.simplicial && key.simplicial != (*s.simplicial ? 1 : 0)) continue;
        out[{key.k, key.n1}] += count;
    }
    return out;
}

std::vector<int> DegeneracyHistogram::levels(int k, const HistogramSlice& s) const {
    std::vector<int> out;
    for (const auto& [kn, count] : slice(s))
        if (kn.first == k && count > 0) out.push_back(kn.second);
    return out;
}

namespace {

std::string flag_str(int v) { return v < 0 ? "any" : std::to_string(v); }

int parse_flag(const std::string& s, int line) {
    if (s == "any") return -1;
    if (s == "0") return 0;
    if (s == "1") return 1;
    throw ParseError(line, "expected 0, 1 or any, got '" + s + "'");
}

}  // namespace

std::string histogram_csv(const DegeneracyHistogram& h) {
    std::ostringstream out;
    out << "K,N1,class,orientable,simplicial,count\n";
    for (const auto& [key, count] : h.entries()) {
        out << key.k << "," << key.n1 << "," << key.cls << "," << flag_str(key.orientable) << ","
            << flag_str(key.simplicial) << "," << count << "\n";
    }
    return out.str();
}

DegeneracyHistogram parse_histogram_csv(std::string_view text, const std::string& source) {
    DegeneracyHistogram h;
    h.source = source;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    std::set<HistogramKey> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "K,N1,class,orientable,simplicial,count")
                throw ParseError(line_no, "bad histogram header");
            header_seen = true;
            continue;
        }
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string col;
        while (std::getline(ls, col, ',')) cols.push_back(col);
        if (cols.size() != 6) throw ParseError(line_no, "expected 6 columns");
        HistogramKey key;
        int64_t count;
        try {
            key.k = std::stoi(cols[0]);
            key.n1 = std::stoi(cols[1]);
            key.cls = cols[2];
            key.orientable = parse_flag(cols[3], line_no);
            key.simplicial = parse_flag(cols[4], line_no);
            count = std::stoll(cols[5]);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(line_no, "malformed histogram row");
        }
        if (key.k <= 0 || key.n1 <= 0) throw ParseError(line_no, "K and N1 must be positive");
        if (count < 0) throw ParseError(line_no, "count must be nonnegative");
        if (!seen.insert(key).second)
            throw ParseError(line_no, "duplicate histogram key (K=" + cols[0] + ", N1=" + cols[1] +
                                          ", class=" + cols[2] + ")");
        h.add(key, count);
    }
    if (!header_seen) throw ParseError(line_no, "empty histogram file");
    return h;
}

DegeneracyHistogram ingest_histogram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open histogram file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_histogram_csv(buf.str(), "ingested:" + path);
}

std::string write_gluing_archive(const std::vector<GluedTriangulation>& ts) {
    std::ostringstream out;
    bool first = true;
    for (const GluedTriangulation& t : ts) {
        if (!first) out << "---\n";
        first = false;
        out << "# " << iso_signature(t).text << "\n";
        out << to_gluing_text(t);
    }
    return out.str();
}

std::vector<GluedTriangulation> parse_gluing_archive(std::string_view text) {
    std::vector<GluedTriangulation> out;
    std::string block;
    std::istringstream in{std::string(text)};
    std::string line;
    auto flush = [&]() {
        bool blank = true;
        for (char c : block)
            if (!isspace(static_cast<unsigned char>(c)) ) { blank = false; break; }
        if (!blank) out.push_back(parse_gluing_text(block));
        block.clear();
    };
    while (std::getline(in, line)) {
        if (line == "---") {
            flush();
        } else {
            block += line;
            block += "\n";
        }
    }
    flush();
    return out;
}

std::vector<GluedTriangulation> ingest_gluing_archive(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open archive file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_gluing_archive(buf.str());
}

std::vector<CensusRow> census_rows(int k, const CensusOptions& opts) {
    std::vector<GluedTriangulation> all = enumerate_all(k, opts);
    std::vector<CensusRow> rows(all.size());
    int threads = std::max(1, opts.threads);
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= all.size()) break;
            CensusRow row{std::move(all[i]), IsoSignature{}, 0, false, false, ManifoldClass{}};
            QuotientSkeleton s(row.t);
            row.sig = iso_signature(row.t);
            row.n1 = s.n1();
            row.orientable = validate_manifold(row.t, s).orientable;
            row.simplicial = is_simplicial(row.t, s).simplicial;
            row.cls = classify_manifold(row.t, opts);
            rows[i] = std::move(row);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

DegeneracyHistogram histogram_from_rows(const std::vector<CensusRow>& rows) {
    DegeneracyHistogram h;
    h.source = "enumerated";
    for (const CensusRow& row : rows) {
        HistogramKey key{row.t.tet_count(), row.n1, row.cls.to_string(), row.orientable ? 1 : 0,
                         row.simplicial ? 1 : 0};
        h.add(key, 1);
    }
    return h;
}

DegeneracyHistogram histogram_from_census(int k, const CensusOptions& opts) {
    return histogram_from_rows(census_rows(k, opts));
}

}  // namespace regge
