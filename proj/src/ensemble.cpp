#include "regge/ensemble.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "regge/constants.hpp"
#include "regge/errors.hpp"
#include "regge/format.hpp"

namespace regge {

int64_t flat_level_n1(int64_t k) {
    DD x = dd_mul_d(kInvMuStar3, 6.0 * static_cast<double>(k));
    double f = std::floor(x.hi);
    double r = (x.hi - f) + x.lo;
    if (r < 0.0) f -= 1.0;
    if (r >= 1.0) f += 1.0;
    return static_cast<int64_t>(f);
}

AlmostFlatBracket almost_flat_bracket(int64_t k, const ActionParams& p, int gamma_star_bound) {
    if (k < 1) throw DomainError("volume K must be positive");
    if (p.dimension != 3) throw DomainError("almost-flat brackets require n = 3");
    int64_t n1m = flat_level_n1(k);
    if (n1m <= k)
        throw SmallVolumeError("no negative-action level at this volume (K=" + std::to_string(k) +
                               ": attainable mu <= 6K/(K+1) < mu*_3)");
    AlmostFlatBracket b;
    b.k = k;
    b.params = p;
    b.n1_minus = n1m;
    b.n1_plus = n1m + 1;
    b.mu_minus = RationalMu{6 * k, b.n1_minus};
    b.mu_plus = RationalMu{6 * k, b.n1_plus};
    b.a_minus = action_at_mu(b.mu_minus, p);
    b.a_plus = action_at_mu(b.mu_plus, p);
    b.delta_a = b.a_plus - b.a_minus;
    double lower = static_cast<double>(k) + 0.5 * (3.0 + std::sqrt(9.0 + 8.0 * static_cast<double>(k)));
    double upper = (4.0 * static_cast<double>(k) - gamma_star_bound) / 3.0;
    b.guaranteed = static_cast<double>(b.n1_minus) >= lower && static_cast<double>(b.n1_plus) <= upper;
    return b;
}

double delta_action(int64_t k, const ActionParams& p) {
    if (k < 1) throw DomainError("volume K must be positive");
    return 3.0 * kSqrt2 / 4.0 / (p.ell * p.ell * static_cast<double>(k));
}

double delta_action_from_volume(double ell, double vol) {
    if (ell <= 0.0 || vol <= 0.0) throw DomainError("edge length and volume must be positive");
    return ell / (8.0 * vol);
}

std::complex<double> ensemble_weight(double action, EnsembleMode mode) {
    if (mode == EnsembleMode::Euclidean) return {std::exp(-action), 0.0};
    return {std::cos(action), std::sin(action)};
}

PartitionValue partition_fixed_volume(const DegeneracyHistogram& hist, int k,
                                      const ActionParams& p, EnsembleMode mode,
                                      const HistogramSlice& slice) {
    auto grouped = hist.slice(slice);
    std::complex<double> z = 0.0;
    int levels = 0;
    for (const auto& [kn, count] : grouped) {
        if (kn.first != k || count == 0) continue;
        double a = action_at_mu(RationalMu{6 * static_cast<int64_t>(k), kn.second}, p);
        z += static_cast<double>(count) * ensemble_weight(a, mode);
        ++levels;
    }
    if (levels == 0) throw DomainError("empty histogram slice at K=" + std::to_string(k));
    PartitionValue out;
    out.value = z;
    out.mode = mode;
    out.provenance = "K=" + std::to_string(k) + " slice, " + std::to_string(levels) + " levels";
    return out;
}

PartitionValue two_level_partition(const AlmostFlatBracket& bracket, double n_plus,
                                   double n_minus, EnsembleMode mode) {
    if (n_plus < 0.0 || n_minus < 0.0) throw DomainError("degeneracies must be nonnegative");
    if (n_plus == 0.0 && n_minus == 0.0) throw DomainError("both degeneracies are zero");
    PartitionValue out;
    out.value = n_plus * ensemble_weight(bracket.a_plus, mode) +
                n_minus * ensemble_weight(bracket.a_minus, mode);
    out.mode = mode;
    out.provenance = "two-level K=" + std::to_string(bracket.k);
    return out;
}

namespace {

std::complex<double> two_level_mean(double a_plus, double a_minus, double ratio,
                                    EnsembleMode mode) {
    // Dividing the two-level weighted mean through by the A+ weight leaves
    // w = weight(A-)/weight(A+): exp(-i dA) for quantum weights exp(iA) and
    // exp(+dA) for euclidean weights exp(-A), with dA = A+ - A-.
    double gap = a_plus - a_minus;
    std::complex<double> w = (mode == EnsembleMode::Quantum)
                                 ? std::complex<double>{std::cos(gap), -std::sin(gap)}
                                 : std::complex<double>{std::exp(gap), 0.0};
    return (a_plus + a_minus * ratio * w) / (1.0 + ratio * w);
}

}  // namespace

std::complex<double> expected_action(const AlmostFlatBracket& bracket, double ratio,
                                     EnsembleMode mode) {
    if (ratio <= 0.0) throw DomainError("degeneracy ratio must be positive");
    return two_level_mean(bracket.a_plus, bracket.a_minus, ratio, mode);
}

std::complex<double> expected_action_symmetric(double delta_a, double ratio, EnsembleMode mode) {
    if (ratio <= 0.0) throw DomainError("degeneracy ratio must be positive");
    return two_level_mean(delta_a / 2.0, -delta_a / 2.0, ratio, mode);
}

LambdaReport lambda_estimate(const CosmologyInputs& inputs) {
    if (inputs.ell_m <= 0.0 || inputs.vol_m3 <= 0.0 || inputs.ratio <= 0.0)
        throw DomainError("cosmology inputs must be positive");
    LambdaReport r;
    r.planck_volume = inputs.vol_m3 / (inputs.ell_m * inputs.ell_m * inputs.ell_m);
    r.k_equiv = r.planck_volume / simplex_volume(3, 1.0);
    r.delta_a = delta_action_from_volume(1.0, r.planck_volume);
    r.expected_action = expected_action_symmetric(r.delta_a, inputs.ratio, inputs.mode);
    r.lambda = -r.expected_action.real() / 2.0;
    r.beta_g = (r.lambda != 0.0) ? 1.0 / (r.planck_volume * r.lambda)
                                 : std::numeric_limits<double>::infinity();
    r.assumptions.push_back("edge length equals the Planck length (ell = 1 in Planck units)");
    r.assumptions.push_back("symmetric almost-flat levels: A+ = |A-| = deltaA/2");
    r.assumptions.push_back("degeneracy ratio N-/N+ = " + format_g12(inputs.ratio));
    r.assumptions.push_back(inputs.mode == EnsembleMode::Quantum ? "quantum weights exp(iA)"
                                                                 : "euclidean weights exp(-A)");
    if (inputs.ratio < 1.0)
        r.assumptions.push_back("warning: N-/N+ < 1 inverts the sign of the expected action");
    return r;
}

std::string LambdaReport::text() const {
    std::ostringstream out;
    out << "planck_volume = " << format_g12(planck_volume) << "\n";
    out << "K_equiv = " << format_g12(k_equiv) << "\n";
    out << "delta_A = " << format_g12(delta_a) << "\n";
    out << "expected_action_re = " << format_g12(expected_action.real()) << "\n";
    out << "expected_action_im = " << format_g12(expected_action.imag()) << "\n";
    out << "lambda = " << format_g12(lambda) << "\n";
    out << "beta_g = " << format_g12(beta_g) << "\n";
    for (const std::string& a : assumptions) out << "assumption: " << a << "\n";
    return out.str();
}

DivergenceProbe divergence_probe(const DegeneracyHistogram& hist, int k, EnsembleMode mode,
                                 std::span<const double> ells, const HistogramSlice& slice) {
    for (size_t i = 0; i + 1 < ells.size(); ++i)
        if (!(ells[i] > ells[i + 1]) || ells[i + 1] <= 0.0)
            throw DomainError("ell sequence must be positive and strictly decreasing");

    DivergenceProbe probe;
    auto grouped = hist.slice(slice);
    bool any_level = false;
    for (const auto& [kn, count] : grouped) {
        if (kn.first != k || count == 0) continue;
        any_level = true;
        if (action_sign(RationalMu{6 * static_cast<int64_t>(k), kn.second}) < 0)
            probe.has_negative_level = true;
    }
    if (!any_level) return probe;  // empty table for an empty slice

    for (double ell : ells) {
        ActionParams p{ell, 3};
        probe.rows.push_back({ell, partition_fixed_volume(hist, k, p, mode, slice).value});
    }
    probe.strictly_increasing = probe.rows.size() > 1;
    for (size_t i = 0; i + 1 < probe.rows.size(); ++i)
        if (!(std::abs(probe.rows[i].z) < std::abs(probe.rows[i + 1].z)))
            probe.strictly_increasing = false;
    probe.flag = probe.has_negative_level ? "divergent (ell -> 0)" : "bounded";
    return probe;
}

}  // namespace regge
