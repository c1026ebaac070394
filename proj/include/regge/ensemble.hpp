#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "regge/action.hpp"
#include "regge/census.hpp"

namespace regge {

// N1 of the negative-action level at volume K: floor(6K / mu*_3). The floor
// is never exact because mu*_3 is irrational.
int64_t flat_level_n1(int64_t k);

// The two almost scalar-flat levels at fixed volume K: N1- = floor(6K/mu*_3)
// with mu- = 6K/N1- just above mu*_3 (action A- < 0), and N1+ = N1- + 1 with
// mu+ just below (action A+ > 0). `guaranteed` reports whether both levels
// lie inside the band [K + (3+sqrt(9+8K))/2, (4K - gamma*)/3] within which
// every N1 is realized by some triangulation of every manifold.
struct AlmostFlatBracket {
    int64_t k = 0;
    int64_t n1_minus = 0, n1_plus = 0;
    RationalMu mu_minus, mu_plus;
    double a_minus = 0.0, a_plus = 0.0;
    double delta_a = 0.0;  // a_plus - a_minus = (3 sqrt2 / 4) / (ell^2 K)
    bool guaranteed = false;
    ActionParams params;
};

// Throws SmallVolumeError when no negative-action level exists (K <= 5).
AlmostFlatBracket almost_flat_bracket(int64_t k, const ActionParams& p,
                                      int gamma_star_bound = -10);

// Action gap between the almost-flat levels: (3 sqrt2 / 4) / (ell^2 K).
double delta_action(int64_t k, const ActionParams& p);

// Same gap written through the PL volume: ell / (8 Vol).
double delta_action_from_volume(double ell, double vol);

enum class EnsembleMode { Euclidean, Quantum };

// Euclidean weights exp(-A); quantum weights exp(iA), modulus one.
std::complex<double> ensemble_weight(double action, EnsembleMode mode);

struct PartitionValue {
    std::complex<double> value;
    EnsembleMode mode = EnsembleMode::Euclidean;
    std::string provenance;
};

// Z_{K,M} = sum over mu-levels of N_{K,M}(mu) * weight(A_mu).
// Throws DomainError on an empty K-slice.
PartitionValue partition_fixed_volume(const DegeneracyHistogram& hist, int k,
                                      const ActionParams& p, EnsembleMode mode,
                                      const HistogramSlice& slice = {});

// Two-level partition N+ w(A+) + N- w(A-). Throws when both counts are zero.
PartitionValue two_level_partition(const AlmostFlatBracket& bracket, double n_plus,
                                   double n_minus, EnsembleMode mode);

// Expected action of the two-level model in the ratio form
//   (A+ + A- N w) / (1 + N w),  N = N-/N+,
// with w = exp(i dA) in quantum mode and w = exp(dA) in euclidean mode (the
// euclidean weights exp(-A±) rebased by exp(A+)).
std::complex<double> expected_action(const AlmostFlatBracket& bracket, double ratio,
                                     EnsembleMode mode);

// Same with the symmetric approximation A+ = |A-| = dA/2.
std::complex<double> expected_action_symmetric(double delta_a, double ratio, EnsembleMode mode);

struct CosmologyInputs {
    double ell_m = 1.6e-35;   // metres per Planck length
    double vol_m3 = 3.5e80;   // spatial volume in cubic metres
    double ratio = 2.5;       // N-/N+
    EnsembleMode mode = EnsembleMode::Quantum;
};

struct LambdaReport {
    double planck_volume = 0.0;
    double k_equiv = 0.0;
    double delta_a = 0.0;
    std::complex<double> expected_action;
    double lambda = 0.0;
    double beta_g = 0.0;
    std::vector<std::string> assumptions;
    std::string text() const;  // frozen ordered key-value format
};

// Full pipeline: physical volume -> Planck units -> gap -> expected action
// (symmetric approximation) -> Lambda = -Re<A>/2 and beta_g = ell/(Vol Lambda).
LambdaReport lambda_estimate(const CosmologyInputs& inputs);

struct DivergenceProbeRow {
    double ell = 0.0;
    std::complex<double> z;
};

struct DivergenceProbe {
    std::vector<DivergenceProbeRow> rows;
    bool has_negative_level = false;
    bool strictly_increasing = false;  // |Z| strictly increasing along the given sequence
    std::string flag;                  // "divergent (ell -> 0)" or "bounded"
};

// Z along a decreasing ell sequence for a fixed-K histogram slice.
DivergenceProbe divergence_probe(const DegeneracyHistogram& hist, int k, EnsembleMode mode,
                                 std::span<const double> ells, const HistogramSlice& slice = {});

}  // namespace regge
