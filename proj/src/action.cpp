#include "regge/action.hpp"

#include <cmath>

#include "regge/constants.hpp"
#include "regge/errors.hpp"

namespace regge {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void require_dimension_3(const ActionParams& p) {
    if (p.dimension != 3)
        throw DomainError("dimension mismatch: manifold actions require n = 3, got n = " +
                          std::to_string(p.dimension));
}

// (n(n+1)/16) * V_{n-2}(ell) / V_n(ell) = n(n+1)(n-1)n/8 * sqrt((n-1)/(n+1)) / ell^2,
// reduced from the simplex volume formula.
double normalized_prefactor(int n, double ell) {
    double ratio = 2.0 * n * (n - 1) * std::sqrt(static_cast<double>(n - 1) / (n + 1));
    return static_cast<double>(n) * (n + 1) / 16.0 * ratio / (ell * ell);
}

}  // namespace

double dihedral_angle(int n) {
    if (n < 2) throw DomainError("dihedral angle requires n >= 2");
    return static_cast<double>(acosl(1.0L / n));
}

double flat_degree(int n) {
    if (n < 2) throw DomainError("flat bone-degree requires n >= 2");
    return static_cast<double>(kTwoPiL / acosl(1.0L / n));
}

double simplex_volume(int k, double ell) {
    if (k < 0) throw DomainError("simplex dimension must be nonnegative");
    if (ell <= 0.0) throw DomainError("edge length must be positive");
    return std::sqrt(static_cast<double>(k + 1)) / (factorial(k) * std::pow(kSqrt2, k)) *
           std::pow(ell, k);
}

ActionValue regge_action_equal_lengths(const QuotientSkeleton& s, const ActionParams& p) {
    require_dimension_3(p);
    // Sum of angle deficits over edge orbits, accumulated in double-double so
    // the total keeps full relative precision when it is nearly zero.
    DD total{0.0, 0.0};
    for (int e = 0; e < s.n1(); ++e) {
        DD deficit = dd_sub(kTwoPi, dd_mul_d(kTheta3, static_cast<double>(s.edge_degree(e))));
        total = dd_add(total, deficit);
    }
    double v1 = p.ell;  // V_1(ell) = ell
    return {total.value() * v1 / (16.0 * M_PI), ActionKind::Raw};
}

ActionValue regge_action_equal_lengths(const GluedTriangulation& t, const ActionParams& p) {
    QuotientSkeleton s(t);
    return regge_action_equal_lengths(s, p);
}

ActionValue normalized_action(const QuotientSkeleton& s, const ActionParams& p) {
    ActionValue raw = regge_action_equal_lengths(s, p);
    double vol = simplex_volume(3, p.ell) * s.n3();
    return {raw.value / vol, ActionKind::VolumeNormalized};
}

ActionValue normalized_action(const GluedTriangulation& t, const ActionParams& p) {
    QuotientSkeleton s(t);
    return normalized_action(s, p);
}

double action_at_mu(const RationalMu& mu, const ActionParams& p) {
    if (mu.num <= 0 || mu.den <= 0) throw DomainError("mean bone-degree must be positive");
    if (p.dimension != 3) return action_at_mu(mu.value(), p);
    // 1/mu - 1/mu*_3 = (2 pi den - theta3 num) / (2 pi num) for mu = num/den.
    DD deficit = dd_sub(dd_mul_d(kTwoPi, static_cast<double>(mu.den)),
                        dd_mul_d(kTheta3, static_cast<double>(mu.num)));
    double scale = 9.0 * kSqrt2 / (4.0 * M_PI * static_cast<double>(mu.num) * p.ell * p.ell);
    return deficit.value() * scale;
}

double action_at_mu(double mu, const ActionParams& p) {
    if (mu <= 0.0) throw DomainError("mean bone-degree must be positive");
    double inv_star = (p.dimension == 3) ? kInvMuStar3.value() : 1.0 / flat_degree(p.dimension);
    return normalized_prefactor(p.dimension, p.ell) * (1.0 / mu - inv_star);
}

int action_sign(const RationalMu& mu) {
    // Fast path in double with a rigorous rounding bound; escalate to the
    // frozen extended-precision constants when the bound straddles zero.
    double a = M_PI * 2.0 * static_cast<double>(mu.den);
    double b = kTheta3.hi * static_cast<double>(mu.num);
    double d = a - b;
    double bound = 4e-16 * (std::abs(a) + std::abs(b));
    if (std::abs(d) > bound) return d > 0 ? 1 : -1;
    DD deficit = dd_sub(dd_mul_d(kTwoPi, static_cast<double>(mu.den)),
                        dd_mul_d(kTheta3, static_cast<double>(mu.num)));
    return deficit.value() > 0 ? 1 : -1;
}

}  // namespace regge
