#pragma once

#include <cmath>

namespace regge {

// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving roughly 32 significant decimal digits. Used only where sign
// decisions near the flat bone-degree must not flip: the deficit
// 2*pi*N1 - 6*K*theta3 can be small while both terms are order 10^7.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
    double value() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_sub(DD a, DD b) { return dd_add(a, DD{-b.hi, -b.lo}); }

inline DD dd_mul_d(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div_d(DD a, double b) {
    double q1 = a.hi / b;
    DD r = dd_add(a, dd_mul_d(DD{-q1, 0.0}, b));
    double q2 = (r.hi + r.lo) / b;
    return quick_two_sum(q1, q2);
}

// Frozen extended-precision literals (hi = nearest double, lo = residual).
// theta3 = arccos(1/3), mu*_3 = 2*pi/theta3.
inline constexpr DD kTheta3{1.2309594173407747, -1.7865070821752012e-17};
inline constexpr DD kTwoPi{6.2831853071795862, 4.7692528676655904e-16};
inline constexpr DD kMuStar3{5.1042993121195401, 4.1318017937918363e-16};
inline constexpr DD kInvMuStar3{0.19591327601530364, -4.9145722203887848e-18};

inline constexpr double kSqrt2 = 1.4142135623730951;

// 2*pi*N1 - 6*K*theta3, the exact-sign deficit for rational mu = 6K/N1.
// Positive iff mu < mu*_3 (positive action).
inline DD mu_deficit(long long n1, long long k) {
    DD a = dd_mul_d(kTwoPi, static_cast<double>(n1));
    DD b = dd_mul_d(kTheta3, static_cast<double>(6 * k));
    return dd_sub(a, b);
}

}  // namespace regge
