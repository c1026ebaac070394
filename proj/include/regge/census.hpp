#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regge/homology.hpp"
#include "regge/signature.hpp"
#include "regge/triangulation.hpp"

namespace regge {

// Histogram entry key. `orientable` and `simplicial` are 1, 0, or -1 for
// "any" (used by ingested data that does not carry the split).
struct HistogramKey {
    int k = 0;
    int n1 = 0;
    std::string cls;       // "S3", "unresolved", "other:<H1>", "chain", ...
    int orientable = -1;
    int simplicial = -1;
    auto operator<=>(const HistogramKey&) const = default;
};

struct HistogramSlice {
    std::optional<std::string> cls;
    std::optional<bool> orientable;
    std::optional<bool> simplicial;
};

// Degeneracy counts N_{K,M}(mu) keyed by (K, N1, class, orientability,
// simpliciality). mu is never stored; it is the exact rational 6K/N1.
class DegeneracyHistogram {
public:
    void add(const HistogramKey& key, int64_t count);
    const std::map<HistogramKey, int64_t>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    // Aggregated counts by (K, N1) over entries matching the slice.
    std::map<std::pair<int, int>, int64_t> slice(const HistogramSlice& s) const;
    // N1 levels present in a K-slice, ascending.
    std::vector<int> levels(int k, const HistogramSlice& s) const;

    std::string source;  // "enumerated" | "ingested:<path>" | "chain"

private:
    std::map<HistogramKey, int64_t> entries_;
};

// CSV wire format, header "K,N1,class,orientable,simplicial,count";
// orientable/simplicial columns take 0, 1 or any.
std::string histogram_csv(const DegeneracyHistogram& h);
DegeneracyHistogram parse_histogram_csv(std::string_view text, const std::string& source);
DegeneracyHistogram ingest_histogram_file(const std::string& path);

// Archives: concatenated gluing-file blocks separated by `---` lines.
std::string write_gluing_archive(const std::vector<GluedTriangulation>& ts);
std::vector<GluedTriangulation> parse_gluing_archive(std::string_view text);
std::vector<GluedTriangulation> ingest_gluing_archive(const std::string& path);

struct CensusOptions {
    int threads = 1;
    uint64_t seed = 1;
    int simplify_restarts = 64;
    int64_t simplify_steps = 10000;
};

// Every isomorphism class of valid closed 3-manifold triangulation with
// exactly K tetrahedra, each appearing once as its canonical representative,
// in ascending signature order. Backtracking over face pairings and gluing
// permutations; emits only candidates equal to their own canonical form.
// Output is independent of the worker count.
std::vector<GluedTriangulation> enumerate_all(int k, const CensusOptions& opts = {});

// Unpruned brute force over every pairing and permutation assignment with
// pairwise isomorphism rejection. Exponential; only sensible for K <= 2.
// Test oracle for enumeration completeness.
std::vector<GluedTriangulation> enumerate_brute_force(int k);

struct ManifoldClass {
    enum class Label { S3Confirmed, TrivialH1Unresolved, Other, Unclassified };
    Label label = Label::Unclassified;
    HomologyProfile h1;
    std::string to_string() const;
};

// Conservative classification: nontrivial H1 labels the class directly;
// trivial H1 attempts greedy random simplification toward a catalog of known
// 3-sphere triangulations (all K <= 2 classes with trivial H1, which are
// spheres because the smallest homology 3-sphere needs 5 tetrahedra, plus
// the boundary of the 4-simplex). S3 is claimed only on catalog hit.
ManifoldClass classify_manifold(const GluedTriangulation& t, const CensusOptions& opts = {});

struct CensusRow {
    GluedTriangulation t;
    IsoSignature sig;
    int n1 = 0;
    bool orientable = false;
    bool simplicial = false;
    ManifoldClass cls;
};

// Enumerates, classifies and counts. The histogram carries both orientable
// slices and the simplicial flag so stricter sub-censuses can be produced.
std::vector<CensusRow> census_rows(int k, const CensusOptions& opts = {});
DegeneracyHistogram histogram_from_rows(const std::vector<CensusRow>& rows);
DegeneracyHistogram histogram_from_census(int k, const CensusOptions& opts = {});

}  // namespace regge
