// regge: combinatorial Regge calculus on triangulated closed 3-manifolds.
//
// Subcommands: analyze, enumerate, histogram, bracket, lambda, sample, probe.
// Primary output goes to stdout (or --out files); every run writes a JSON
// manifest to stderr. Exit codes: 0 ok, 2 input error, 3 domain error,
// 4 budget refusal.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "regge/action.hpp"
#include "regge/census.hpp"
#include "regge/ensemble.hpp"
#include "regge/errors.hpp"
#include "regge/format.hpp"
#include "regge/homology.hpp"
#include "regge/moves.hpp"
#include "regge/sampler.hpp"
#include "regge/signature.hpp"
#include "regge/simplicial.hpp"
#include "regge/validation.hpp"

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr const char* kToolVersion = "regge 1.0.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw regge::ParseError(0, "cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw regge::ParseError(0, "cannot write file: " + path);
    out << content;
}

// FNV-1a, for input digests in the run manifest.
std::string digest(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Manifest {
    json j;
    Clock::time_point start = Clock::now();
    Manifest(const std::string& subcommand) {
        j["subcommand"] = subcommand;
        j["tool_version"] = kToolVersion;
        j["input_digests"] = json::object();
    }
    void config(const std::string& key, const json& value) { j["config"][key] = value; }
    void input(const std::string& path, const std::string& data) {
        j["input_digests"][path] = digest(data);
    }
    void emit() {
        j["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
        std::cerr << j.dump(2) << "\n";
    }
};

int max_tets() {
    const char* env = std::getenv("REGGE_MAX_TETS");
    if (env) return std::atoi(env);
    return 7;
}

regge::GluedTriangulation load_triangulation(const std::string& path) {
    return regge::parse_gluing_text(read_file(path));
}

int cmd_analyze(const std::string& path, double ell) {
    Manifest manifest("analyze");
    std::string text = read_file(path);
    manifest.input(path, text);
    manifest.config("ell", ell);

    regge::GluedTriangulation t = regge::parse_gluing_text(text);
    regge::QuotientSkeleton s(t);
    regge::ValidationReport report = regge::validate_manifold(t, s);

    std::cout << "tetrahedra = " << s.n3() << "\n";
    std::cout << "f_vector = (" << s.n0() << "," << s.n1() << "," << s.n2() << "," << s.n3()
              << ")\n";
    std::cout << "valid_manifold = " << (report.valid ? "yes" : "no") << "\n";
    for (const std::string& r : report.reasons) std::cout << "invalid_reason = " << r << "\n";
    std::cout << "orientable = " << (report.orientable ? "yes" : "no") << "\n";
    if (!report.valid) {
        manifest.emit();
        return 3;
    }
    regge::RationalMu mu = regge::mean_bone_degree(s);
    regge::ActionParams p{ell, 3};
    std::cout << "mu = " << mu.num << "/" << mu.den << " = " << regge::format_g12(mu.value())
              << " (display " << regge::format_mu3(mu.value()) << ")\n";
    std::cout << "action_raw = " << regge::format_g12(regge::regge_action_equal_lengths(s, p).value)
              << "\n";
    std::cout << "action_normalized = " << regge::format_g12(regge::normalized_action(s, p).value)
              << "\n";
    auto simp = regge::is_simplicial(t, s);
    std::cout << "simplicial = " << (simp.simplicial ? "yes" : "no");
    if (!simp.simplicial) std::cout << " (" << simp.witness << ")";
    std::cout << "\n";
    std::cout << "h1 = " << regge::homology_h1(s).to_string() << "\n";
    std::cout << "signature = " << regge::iso_signature(t).text << "\n";
    manifest.emit();
    return 0;
}

int cmd_enumerate(int k, const std::string& filter, const std::string& out_prefix, int threads,
                  uint64_t seed) {
    Manifest manifest("enumerate");
    manifest.config("tets", k);
    manifest.config("filter", filter);
    manifest.config("threads", threads);
    manifest.config("seed", seed);
    if (k > max_tets()) {
        std::cerr << "refusing to enumerate K=" << k << " (cap " << max_tets()
                  << "; raise REGGE_MAX_TETS to override)\n";
        manifest.emit();
        return 4;
    }
    regge::CensusOptions opts;
    opts.threads = threads;
    opts.seed = seed;
    auto rows = regge::census_rows(k, opts);

    std::vector<regge::GluedTriangulation> kept;
    regge::DegeneracyHistogram hist = regge::histogram_from_rows(rows);
    for (auto& row : rows) {
        if (filter == "s3" && row.cls.label != regge::ManifoldClass::Label::S3Confirmed) continue;
        if (filter == "simplicial" && !row.simplicial) continue;
        kept.push_back(std::move(row.t));
    }
    std::string archive = regge::write_gluing_archive(kept);
    std::string csv = regge::histogram_csv(hist);
    if (out_prefix.empty()) {
        std::cout << csv;
    } else {
        write_file(out_prefix + ".archive", archive);
        write_file(out_prefix + ".csv", csv);
        std::cout << "classes_total = " << rows.size() << "\n";
        std::cout << "classes_written = " << kept.size() << "\n";
        std::cout << "archive = " << out_prefix << ".archive\n";
        std::cout << "histogram = " << out_prefix << ".csv\n";
    }
    manifest.emit();
    return 0;
}

int cmd_histogram(const std::string& archive_path, const std::string& csv_path,
                  const std::string& cls, const std::string& out) {
    Manifest manifest("histogram");
    regge::DegeneracyHistogram hist;
    if (!archive_path.empty()) {
        std::string text = read_file(archive_path);
        manifest.input(archive_path, text);
        regge::DegeneracyHistogram h;
        h.source = "ingested:" + archive_path;
        for (const auto& t : regge::parse_gluing_archive(text)) {
            regge::QuotientSkeleton s(t);
            auto simp = regge::is_simplicial(t, s);
            auto rep = regge::validate_manifold(t, s);
            h.add(regge::HistogramKey{t.tet_count(), s.n1(), regge::classify_manifold(t).to_string(),
                                      rep.orientable ? 1 : 0, simp.simplicial ? 1 : 0},
                  1);
        }
        hist = std::move(h);
    } else {
        std::string text = read_file(csv_path);
        manifest.input(csv_path, text);
        hist = regge::parse_histogram_csv(text, "ingested:" + csv_path);
    }
    regge::DegeneracyHistogram sliced;
    if (!cls.empty()) {
        sliced.source = hist.source;
        for (const auto& [key, count] : hist.entries())
            if (key.cls == cls) sliced.add(key, count);
    } else {
        sliced = hist;
    }
    std::string csv = regge::histogram_csv(sliced);
    if (out.empty())
        std::cout << csv;
    else
        write_file(out, csv);
    manifest.emit();
    return 0;
}

int cmd_bracket(int64_t k, double ell) {
    Manifest manifest("bracket");
    manifest.config("tets", k);
    manifest.config("ell", ell);
    regge::ActionParams p{ell, 3};
    regge::AlmostFlatBracket b = regge::almost_flat_bracket(k, p);
    std::cout << "K = " << b.k << "\n";
    std::cout << "N1_minus = " << b.n1_minus << "\n";
    std::cout << "N1_plus = " << b.n1_plus << "\n";
    std::cout << "mu_minus = " << b.mu_minus.num << "/" << b.mu_minus.den << " = "
              << regge::format_g12(b.mu_minus.value()) << " (display "
              << regge::format_mu3(b.mu_minus.value()) << ")\n";
    std::cout << "mu_plus = " << b.mu_plus.num << "/" << b.mu_plus.den << " = "
              << regge::format_g12(b.mu_plus.value()) << " (display "
              << regge::format_mu3(b.mu_plus.value()) << ")\n";
    std::cout << "A_minus = " << regge::format_g12(b.a_minus) << "\n";
    std::cout << "A_plus = " << regge::format_g12(b.a_plus) << "\n";
    std::cout << "delta_A = " << regge::format_g12(b.delta_a) << "\n";
    std::cout << "guaranteed = " << (b.guaranteed ? "yes" : "no") << "\n";
    manifest.emit();
    return 0;
}

int cmd_lambda(double ell_m, double vol_m3, double ratio, bool euclidean, bool ratio_supplied) {
    Manifest manifest("lambda");
    manifest.config("ell_m", ell_m);
    manifest.config("vol_m3", vol_m3);
    manifest.config("ratio", ratio);
    regge::CosmologyInputs in;
    in.ell_m = ell_m;
    in.vol_m3 = vol_m3;
    in.ratio = ratio;
    in.mode = euclidean ? regge::EnsembleMode::Euclidean : regge::EnsembleMode::Quantum;
    regge::LambdaReport report = regge::lambda_estimate(in);
    if (!ratio_supplied)
        report.assumptions.push_back(
            "degeneracy ratio defaulted to 2.5, the midpoint of the conjectured [2,3] band");
    std::cout << report.text();
    manifest.emit();
    return 0;
}

int cmd_sample(const std::string& seed_file, const regge::SamplerConfig& cfg,
               const std::string& out_prefix) {
    Manifest manifest("sample");
    manifest.config("seed", cfg.seed);
    manifest.config("target_volume", cfg.target_volume);
    manifest.config("band_half_width", cfg.band_half_width);
    manifest.config("pin_strength", cfg.pin_strength);
    manifest.config("steps", cfg.steps);
    manifest.config("chains", cfg.chains);
    manifest.config("mode",
                    cfg.mode == regge::SamplerConfig::WeightMode::Uniform ? "uniform" : "euclidean");

    regge::GluedTriangulation t0;
    if (!seed_file.empty()) {
        std::string text = read_file(seed_file);
        manifest.input(seed_file, text);
        t0 = regge::parse_gluing_text(text);
    } else {
        // Grow the minimal sphere to the target volume with deterministic 2-3 moves.
        t0 = regge::boundary_4_simplex();
        while (t0.tet_count() < cfg.target_volume) {
            auto moves = regge::enumerate_moves(t0, regge::kMoveTwoThree);
            if (moves.empty()) break;
            t0 = regge::apply_move(t0, moves.front());
        }
    }
    regge::ChainStats stats = regge::run_chain(t0, cfg);
    std::string csv = regge::chain_stats_csv(stats);
    std::string summary = regge::chain_stats_summary_json(stats);
    if (out_prefix.empty()) {
        std::cout << csv << summary;
    } else {
        write_file(out_prefix + ".csv", csv);
        write_file(out_prefix + ".json", summary);
        std::cout << "visits_csv = " << out_prefix << ".csv\n";
        std::cout << "summary = " << out_prefix << ".json\n";
    }
    std::cout << "ratio = " << regge::format_g12(stats.pooled.value) << "\n";
    std::cout << "ratio_std_error = " << regge::format_g12(stats.pooled.std_error) << "\n";
    manifest.emit();
    return 0;
}

int cmd_probe(const std::string& csv_path, int k, const std::vector<double>& ells,
              bool euclidean, const std::string& cls) {
    Manifest manifest("probe");
    std::string text = read_file(csv_path);
    manifest.input(csv_path, text);
    manifest.config("tets", k);
    regge::DegeneracyHistogram hist = regge::parse_histogram_csv(text, "ingested:" + csv_path);
    regge::HistogramSlice slice;
    if (!cls.empty()) slice.cls = cls;
    regge::DivergenceProbe probe = regge::divergence_probe(
        hist, k, euclidean ? regge::EnsembleMode::Euclidean : regge::EnsembleMode::Quantum, ells,
        slice);
    std::cout << "ell,Z_re,Z_im,abs_Z\n";
    for (const auto& row : probe.rows)
        std::cout << regge::format_g12(row.ell) << "," << regge::format_g12(row.z.real()) << ","
                  << regge::format_g12(row.z.imag()) << "," << regge::format_g12(std::abs(row.z))
                  << "\n";
    std::cout << "negative_level = " << (probe.has_negative_level ? "yes" : "no") << "\n";
    std::cout << "strictly_increasing = " << (probe.strictly_increasing ? "yes" : "no") << "\n";
    std::cout << "flag = " << probe.flag << "\n";
    manifest.emit();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial Regge calculus on closed 3-manifold triangulations"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    int threads = 1;
    app.add_option("--seed", seed, "Master seed for all randomized work");
    app.add_option("--threads", threads, "Worker cap for parallel stages");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Validate and report on a gluing file");
    std::string analyze_file;
    double analyze_ell = 1.0;
    analyze->add_option("input", analyze_file, "gluing file")->required();
    analyze->add_option("--ell", analyze_ell, "edge length in Planck units");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Census of all classes at fixed K");
    int enum_k = 1;
    std::string enum_filter, enum_out;
    enumerate->add_option("--tets", enum_k, "tetrahedron count")->required();
    enumerate->add_option("--filter", enum_filter, "archive filter: s3 | simplicial");
    enumerate->add_option("--out", enum_out, "output prefix (.archive, .csv)");

    // histogram
    auto* histogram = app.add_subcommand("histogram", "Build or slice a degeneracy histogram");
    std::string hist_archive, hist_csv, hist_class, hist_out;
    histogram->add_option("--archive", hist_archive, "gluing archive to ingest");
    histogram->add_option("--csv", hist_csv, "histogram CSV to ingest");
    histogram->add_option("--class", hist_class, "restrict to one class label");
    histogram->add_option("--out", hist_out, "output CSV path");

    // bracket
    auto* bracket = app.add_subcommand("bracket", "Almost scalar-flat levels at volume K");
    int64_t bracket_k = 6;
    double bracket_ell = 1.0;
    bracket->add_option("--tets", bracket_k, "volume K")->required();
    bracket->add_option("--ell", bracket_ell, "edge length in Planck units");

    // lambda
    auto* lambda = app.add_subcommand("lambda", "Emergent cosmological-constant pipeline");
    double lam_ell = 1.6e-35, lam_vol = 3.5e80, lam_ratio = 2.5;
    bool lam_euclidean = false;
    lambda->add_option("--ell-m", lam_ell, "Planck length in metres");
    lambda->add_option("--vol-m3", lam_vol, "spatial volume in cubic metres");
    auto* ratio_opt = lambda->add_option("--ratio", lam_ratio, "degeneracy ratio N-/N+");
    lambda->add_flag("--euclidean", lam_euclidean, "use euclidean weights instead of quantum");

    // sample
    auto* sample = app.add_subcommand("sample", "Metropolis walk over triangulations");
    regge::SamplerConfig cfg;
    std::string sample_seed_file, sample_out, sample_mode = "uniform";
    sample->add_option("--tets", cfg.target_volume, "target volume K")->required();
    sample->add_option("--delta", cfg.band_half_width, "band half-width");
    sample->add_option("--pin", cfg.pin_strength, "volume pinning strength");
    sample->add_option("--mode", sample_mode, "uniform | euclidean");
    sample->add_option("--ell", cfg.ell, "edge length (euclidean mode)");
    sample->add_option("--steps", cfg.steps, "total steps per chain");
    sample->add_option("--burn-in", cfg.burn_in, "burn-in steps (default 10%)");
    sample->add_option("--thin", cfg.thinning, "thinning interval");
    sample->add_option("--chains", cfg.chains, "independent chains");
    sample->add_option("--start", sample_seed_file, "gluing file for the start state");
    sample->add_option("--out", sample_out, "output prefix (.csv, .json)");

    // probe
    auto* probe = app.add_subcommand("probe", "Partition-function divergence probe");
    std::string probe_csv, probe_class;
    int probe_k = 6;
    std::vector<double> probe_ells{1.0, 0.5, 0.25, 0.125};
    bool probe_euclidean = true;
    probe->add_option("--hist", probe_csv, "histogram CSV")->required();
    probe->add_option("--tets", probe_k, "volume K")->required();
    probe->add_option("--ells", probe_ells, "decreasing edge lengths");
    probe->add_option("--class", probe_class, "restrict to one class label");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return cmd_analyze(analyze_file, analyze_ell);
        if (*enumerate) return cmd_enumerate(enum_k, enum_filter, enum_out, threads, seed);
        if (*histogram) {
            if (hist_archive.empty() == hist_csv.empty()) {
                std::cerr << "histogram: exactly one of --archive / --csv is required\n";
                return 2;
            }
            return cmd_histogram(hist_archive, hist_csv, hist_class, hist_out);
        }
        if (*bracket) return cmd_bracket(bracket_k, bracket_ell);
        if (*lambda)
            return cmd_lambda(lam_ell, lam_vol, lam_ratio, lam_euclidean, ratio_opt->count() > 0);
        if (*sample) {
            cfg.seed = seed;
            if (sample_mode == "euclidean")
                cfg.mode = regge::SamplerConfig::WeightMode::Euclidean;
            else if (sample_mode != "uniform") {
                std::cerr << "sample: --mode must be uniform or euclidean\n";
                return 2;
            }
            return cmd_sample(sample_seed_file, cfg, sample_out);
        }
        if (*probe) return cmd_probe(probe_csv, probe_k, probe_ells, probe_euclidean, probe_class);
    } catch (const regge::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const regge::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const regge::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
