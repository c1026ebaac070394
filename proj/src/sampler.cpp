#include "regge/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "regge/action.hpp"
#include "regge/ensemble.hpp"
#include "regge/errors.hpp"
#include "regge/rng.hpp"
#include "regge/signature.hpp"
#include "regge/validation.hpp"

namespace regge {

namespace {

struct StateInfo {
    GluedTriangulation t;
    int n3 = 0;
    int n1 = 0;
    double log_weight = 0.0;
    std::vector<PachnerMove> moves;
    int aut = 1;
    std::string sig;  // filled when signatures are needed
};

double log_state_weight(const QuotientSkeleton& s, const SamplerConfig& cfg) {
    double lw = 0.0;
    if (cfg.mode == SamplerConfig::WeightMode::Euclidean)
        lw -= normalized_action(s, ActionParams{cfg.ell, 3}).value;
    double dk = static_cast<double>(s.n3() - cfg.target_volume);
    lw -= cfg.pin_strength * dk * dk;
    return lw;
}

StateInfo make_state(GluedTriangulation t, const SamplerConfig& cfg) {
    StateInfo info{std::move(t), 0, 0, 0.0, {}, 1, {}};
    QuotientSkeleton s(info.t);
    info.n3 = s.n3();
    info.n1 = s.n1();
    info.log_weight = log_state_weight(s, cfg);
    info.moves = enumerate_moves(info.t, s, cfg.kinds);
    if (cfg.automorphism_correction || cfg.record_state_visits) {
        auto [sig, aut] = iso_signature_with_symmetries(info.t);
        info.aut = aut;
        info.sig = std::move(sig.text);
    }
    return info;
}

// Integrated autocorrelation time with a self-consistent window.
double autocorrelation_time(const std::vector<double>& x) {
    size_t n = x.size();
    if (n < 8) return 1.0;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    if (var == 0.0) return 1.0;
    double tau = 1.0;
    size_t max_lag = n / 4;
    for (size_t lag = 1; lag <= max_lag; ++lag) {
        double c = 0.0;
        for (size_t i = 0; i + lag < n; ++i) c += (x[i] - mean) * (x[i + lag] - mean);
        c /= static_cast<double>(n - lag) * var;
        if (c <= 0.0) break;
        tau += 2.0 * c;
        if (static_cast<double>(lag) >= 6.0 * tau) break;
    }
    return tau;
}

RatioEstimate ratio_from_batches(const std::vector<std::array<int64_t, 2>>& batches) {
    RatioEstimate r;
    int64_t minus = 0, plus = 0;
    for (const auto& b : batches) {
        minus += b[0];
        plus += b[1];
    }
    r.minus_visits = minus;
    r.plus_visits = plus;
    if (plus == 0 || minus == 0) {
        r.message = "insufficient samples at the almost-flat levels (N-=" + std::to_string(minus) +
                    ", N+=" + std::to_string(plus) + ")";
        return r;
    }
    r.value = static_cast<double>(minus) / static_cast<double>(plus);
    size_t n = batches.size();
    if (n < 16) {
        r.message = "too few batches (" + std::to_string(n) + ") for a batch-means error";
        return r;
    }
    // Ratio-estimator standard error by the delta method over batch means:
    // var(M/P) ~ (s_mm - 2 r s_mp + r^2 s_pp) / (n P_bar^2). Robust when
    // individual batches are sparse, unlike averaging per-batch ratios.
    double m_bar = static_cast<double>(minus) / static_cast<double>(n);
    double p_bar = static_cast<double>(plus) / static_cast<double>(n);
    double s_mm = 0.0, s_pp = 0.0, s_mp = 0.0;
    for (const auto& b : batches) {
        double dm = static_cast<double>(b[0]) - m_bar;
        double dp = static_cast<double>(b[1]) - p_bar;
        s_mm += dm * dm;
        s_pp += dp * dp;
        s_mp += dm * dp;
    }
    double denom = static_cast<double>(n - 1) * static_cast<double>(n);
    s_mm /= denom;
    s_pp /= denom;
    s_mp /= denom;
    double var = (s_mm - 2.0 * r.value * s_mp + r.value * r.value * s_pp) / (p_bar * p_bar);
    r.std_error = std::sqrt(std::max(0.0, var));
    r.ok = true;
    return r;
}

ChainResult run_single_chain(const GluedTriangulation& t0, const SamplerConfig& cfg,
                             int chain_index, int64_t n1_minus, int64_t n1_plus) {
    ChainResult res;
    res.chain_index = chain_index;
    res.chain_seed = derive_seed(cfg.seed, static_cast<uint64_t>(chain_index));
    Rng rng(res.chain_seed);

    int64_t burn_in = cfg.burn_in >= 0 ? cfg.burn_in : cfg.steps / 10;
    int64_t expected_samples = cfg.thinning > 0 ? (cfg.steps - burn_in) / cfg.thinning : 0;
    int batch_count = std::max(16, cfg.batch_count);
    res.batches.assign(static_cast<size_t>(batch_count), {0, 0});
    int64_t per_batch = std::max<int64_t>(1, expected_samples / batch_count);

    StateInfo cur = make_state(t0, cfg);
    std::vector<double> mu_series;
    mu_series.reserve(static_cast<size_t>(expected_samples));

    for (int64_t step = 0; step < cfg.steps; ++step) {
        if (cur.moves.empty()) {
            res.halted_no_moves = true;
            break;
        }
        PachnerMove m = cur.moves[rng.below(cur.moves.size())];
        ++res.proposed[static_cast<size_t>(m.kind)];
        int n3_next = cur.n3 + fvector_delta(m.kind).dn3;
        if (std::abs(n3_next - cfg.target_volume) <= cfg.band_half_width) {
            StateInfo next = make_state(apply_move(cur.t, m), cfg);
            double log_ratio = next.log_weight - cur.log_weight +
                               std::log(static_cast<double>(cur.moves.size())) -
                               std::log(static_cast<double>(next.moves.size()));
            if (cfg.automorphism_correction)
                log_ratio += std::log(static_cast<double>(next.aut)) -
                             std::log(static_cast<double>(cur.aut));
            if (log_ratio >= 0.0 || rng.uniform() < std::exp(log_ratio)) {
                cur = std::move(next);
                ++res.accepted[static_cast<size_t>(m.kind)];
            }
        }
        if (cfg.debug_validate_every > 0 && (step + 1) % cfg.debug_validate_every == 0) {
            if (!validate_manifold(cur.t).valid)
                throw DomainError("chain state failed manifold validation (move bug)");
        }
        if (step >= burn_in && cfg.thinning > 0 && (step - burn_in) % cfg.thinning == 0) {
            ++res.visits[{cur.n3, cur.n1}];
            if (cfg.record_state_visits) ++res.state_visits[cur.sig];
            mu_series.push_back(6.0 * static_cast<double>(cur.n3) / static_cast<double>(cur.n1));
            if (cur.n3 == cfg.target_volume) {
                size_t batch = std::min<size_t>(static_cast<size_t>(res.samples / per_batch),
                                                static_cast<size_t>(batch_count - 1));
                if (cur.n1 == n1_minus) ++res.batches[batch][0];
                if (cur.n1 == n1_plus) ++res.batches[batch][1];
            }
            ++res.samples;
        }
    }

    res.mu_autocorr_time = autocorrelation_time(mu_series);
    res.ratio = ratio_from_batches(res.batches);
    return res;
}

}  // namespace

ChainStats run_chain(const GluedTriangulation& t0, const SamplerConfig& cfg) {
    if (cfg.band_half_width < 1) throw DomainError("band half-width must be >= 1");
    int64_t burn_in = cfg.burn_in >= 0 ? cfg.burn_in : cfg.steps / 10;
    if (cfg.steps <= burn_in) throw DomainError("steps must exceed burn-in");
    if (std::abs(QuotientSkeleton(t0).n3() - cfg.target_volume) > cfg.band_half_width)
        throw DomainError("start state lies outside the volume band");

    ChainStats stats;
    stats.config = cfg;
    stats.n1_minus = flat_level_n1(cfg.target_volume);
    stats.n1_plus = stats.n1_minus + 1;

    int chains = std::max(1, cfg.chains);
    stats.per_chain.resize(static_cast<size_t>(chains));
    if (chains == 1) {
        stats.per_chain[0] = run_single_chain(t0, cfg, 0, stats.n1_minus, stats.n1_plus);
    } else {
        std::vector<std::thread> pool;
        for (int c = 0; c < chains; ++c)
            pool.emplace_back([&, c] {
                stats.per_chain[static_cast<size_t>(c)] =
                    run_single_chain(t0, cfg, c, stats.n1_minus, stats.n1_plus);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<std::array<int64_t, 2>> all_batches;
    for (const ChainResult& c : stats.per_chain) {
        for (const auto& [kn, n] : c.visits) stats.visits[kn] += n;
        for (const auto& [sig, n] : c.state_visits) stats.state_visits[sig] += n;
        for (size_t i = 0; i < 4; ++i) {
            stats.proposed[i] += c.proposed[i];
            stats.accepted[i] += c.accepted[i];
        }
        stats.samples += c.samples;
        all_batches.insert(all_batches.end(), c.batches.begin(), c.batches.end());
    }
    stats.pooled = ratio_from_batches(all_batches);
    return stats;
}

RatioEstimate estimate_ratio(const ChainStats& stats, int k) {
    if (k == stats.config.target_volume) {
        std::vector<std::array<int64_t, 2>> all;
        for (const ChainResult& c : stats.per_chain)
            all.insert(all.end(), c.batches.begin(), c.batches.end());
        return ratio_from_batches(all);
    }
    // Off-target volumes: counts are available but no batch decomposition.
    RatioEstimate r;
    int64_t n1m = flat_level_n1(k);
    auto it_minus = stats.visits.find({k, static_cast<int>(n1m)});
    auto it_plus = stats.visits.find({k, static_cast<int>(n1m + 1)});
    r.minus_visits = it_minus == stats.visits.end() ? 0 : it_minus->second;
    r.plus_visits = it_plus == stats.visits.end() ? 0 : it_plus->second;
    if (r.minus_visits == 0 || r.plus_visits == 0) {
        r.message = "insufficient samples at the almost-flat levels (N-=" +
                    std::to_string(r.minus_visits) + ", N+=" + std::to_string(r.plus_visits) + ")";
        return r;
    }
    r.value = static_cast<double>(r.minus_visits) / static_cast<double>(r.plus_visits);
    r.message = "no batch data at this volume; standard error unavailable";
    return r;
}

std::string chain_stats_csv(const ChainStats& stats) {
    std::ostringstream out;
    out << "K,N1,class,orientable,simplicial,count\n";
    for (const auto& [kn, n] : stats.visits)
        out << kn.first << "," << kn.second << ",chain,any,any," << n << "\n";
    return out.str();
}

std::string chain_stats_summary_json(const ChainStats& stats) {
    std::ostringstream out;
    auto kind_block = [&](const std::array<int64_t, 4>& proposed,
                          const std::array<int64_t, 4>& accepted) {
        out << "{";
        const char* names[4] = {"1-4", "4-1", "2-3", "3-2"};
        for (int i = 0; i < 4; ++i) {
            double rate = proposed[static_cast<size_t>(i)] > 0
                              ? static_cast<double>(accepted[static_cast<size_t>(i)]) /
                                    static_cast<double>(proposed[static_cast<size_t>(i)])
                              : 0.0;
            out << "\"" << names[i] << "\": " << rate << (i < 3 ? ", " : "");
        }
        out << "}";
    };
    out << "{\n";
    out << "  \"seed\": " << stats.config.seed << ",\n";
    out << "  \"target_volume\": " << stats.config.target_volume << ",\n";
    out << "  \"band_half_width\": " << stats.config.band_half_width << ",\n";
    out << "  \"steps\": " << stats.config.steps << ",\n";
    out << "  \"chains\": " << stats.per_chain.size() << ",\n";
    out << "  \"samples\": " << stats.samples << ",\n";
    out << "  \"n1_minus\": " << stats.n1_minus << ",\n";
    out << "  \"n1_plus\": " << stats.n1_plus << ",\n";
    out << "  \"acceptance_rates\": ";
    kind_block(stats.proposed, stats.accepted);
    out << ",\n";
    out << "  \"ratio\": " << stats.pooled.value << ",\n";
    out << "  \"ratio_std_error\": " << stats.pooled.std_error << ",\n";
    out << "  \"ratio_ok\": " << (stats.pooled.ok ? "true" : "false") << ",\n";
    out << "  \"ensemble\": \"uniform counting measure over isomorphism classes\",\n";
    out << "  \"per_chain\": [\n";
    for (size_t c = 0; c < stats.per_chain.size(); ++c) {
        const ChainResult& cr = stats.per_chain[c];
        out << "    {\"chain\": " << cr.chain_index << ", \"seed\": " << cr.chain_seed
            << ", \"samples\": " << cr.samples << ", \"ratio\": " << cr.ratio.value
            << ", \"ratio_std_error\": " << cr.ratio.std_error
            << ", \"mu_autocorr_time\": " << cr.mu_autocorr_time
            << ", \"halted\": " << (cr.halted_no_moves ? "true" : "false") << "}"
            << (c + 1 < stats.per_chain.size() ? ",\n" : "\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

}  // namespace regge
