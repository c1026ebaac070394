#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "regge/moves.hpp"
#include "regge/triangulation.hpp"

namespace regge {

// Metropolis-Hastings walk over triangulations of a fixed manifold with the
// volume pinned to a band around K. Proposals are uniform over the valid
// moves of the enabled kinds; the acceptance uses the destination's move
// count (Hastings) and, by default, the automorphism counts of both states
// so that the uniform-mode stationary distribution is uniform over
// isomorphism classes rather than weighted by 1/|Aut|.
struct SamplerConfig {
    uint64_t seed = 1;
    int target_volume = 6;        // K
    int band_half_width = 3;      // delta >= 1
    double pin_strength = 0.5;    // lambda_pin >= 0
    enum class WeightMode { Uniform, Euclidean } mode = WeightMode::Uniform;
    double ell = 1.0;             // used by euclidean mode
    MoveKindSet kinds = kAllMoves;
    int64_t steps = 100000;
    int64_t burn_in = -1;         // -1: 10% of steps
    int thinning = 10;
    int chains = 1;
    bool automorphism_correction = true;
    bool record_state_visits = false;  // per-signature occupancy (chi^2 tests)
    int64_t debug_validate_every = 0;  // full manifold re-validation period; 0 = off
    int batch_count = 32;              // batch-means batches per chain (>= 16)
};

struct RatioEstimate {
    double value = 0.0;
    double std_error = 0.0;
    int64_t minus_visits = 0;
    int64_t plus_visits = 0;
    bool ok = false;
    std::string message;
};

struct ChainResult {
    int chain_index = 0;
    uint64_t chain_seed = 0;
    std::map<std::pair<int, int>, int64_t> visits;  // (N3, N1) -> samples
    std::map<std::string, int64_t> state_visits;    // signature -> samples (opt-in)
    std::array<int64_t, 4> proposed{};              // by MoveKind
    std::array<int64_t, 4> accepted{};
    int64_t samples = 0;
    double mu_autocorr_time = 0.0;
    bool halted_no_moves = false;
    // Per-batch counts at (N3 = K, N1-) and (N3 = K, N1+).
    std::vector<std::array<int64_t, 2>> batches;
    RatioEstimate ratio;
};

struct ChainStats {
    SamplerConfig config;
    int64_t n1_minus = 0, n1_plus = 0;  // almost-flat levels at the target volume
    std::vector<ChainResult> per_chain;
    std::map<std::pair<int, int>, int64_t> visits;  // pooled
    std::map<std::string, int64_t> state_visits;    // pooled (opt-in)
    std::array<int64_t, 4> proposed{}, accepted{};
    int64_t samples = 0;
    RatioEstimate pooled;
};

// Runs config.chains independent chains from t0 (chain i seeded with
// derive_seed(seed, i)) and pools the results. Deterministic for a fixed
// config, independent of scheduling.
ChainStats run_chain(const GluedTriangulation& t0, const SamplerConfig& cfg);

// Ratio of visit counts N-/N+ at N3 = k with a batch-means standard error.
// Standard errors are only available at the configured target volume.
RatioEstimate estimate_ratio(const ChainStats& stats, int k);

// Serialization: the census CSV histogram format for the visit counts plus a
// JSON summary block (field names documented in the README).
std::string chain_stats_csv(const ChainStats& stats);
std::string chain_stats_summary_json(const ChainStats& stats);

}  // namespace regge
