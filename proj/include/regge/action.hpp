#pragma once

#include "regge/skeleton.hpp"
#include "regge/triangulation.hpp"

namespace regge {

// Fixed edge length (Planck lengths) and ambient dimension.
struct ActionParams {
    double ell = 1.0;
    int dimension = 3;
};

enum class ActionKind { Raw, VolumeNormalized };

// Raw values are dimensionless; volume-normalized values carry inverse
// Planck area and scale as ell^-2 (raw scales as ell^(n-2)).
struct ActionValue {
    double value = 0.0;
    ActionKind kind = ActionKind::Raw;
};

// Dihedral angle of the regular n-simplex, arccos(1/n).
double dihedral_angle(int n);

// Flat bone-degree 2*pi / arccos(1/n). Exactly 6 for n = 2; irrational for
// n = 3, so comparisons with any rational 6K/N1 are strict.
double flat_degree(int n);

// Volume of the regular k-simplex with edge length ell:
// sqrt(k+1) / (k! sqrt(2^k)) * ell^k.
double simplex_volume(int k, double ell);

// Equal-length Regge action by summation over bones:
// (V_{n-2}(ell)/16pi) * sum_edges (2pi - theta_n deg). Requires n = 3.
ActionValue regge_action_equal_lengths(const GluedTriangulation& t, const ActionParams& p);
ActionValue regge_action_equal_lengths(const QuotientSkeleton& s, const ActionParams& p);

// Raw action divided by the PL volume V_n(ell) * N_n. Requires n = 3.
ActionValue normalized_action(const GluedTriangulation& t, const ActionParams& p);
ActionValue normalized_action(const QuotientSkeleton& s, const ActionParams& p);

// Volume-normalized action as a function of the mean bone-degree alone:
// (n(n+1)/16) * (V_{n-2}/V_n) * (1/mu - 1/mu*_n).
// The rational overload classifies the sign exactly (never zero).
double action_at_mu(const RationalMu& mu, const ActionParams& p);
double action_at_mu(double mu, const ActionParams& p);

// Exact sign of the action for rational mu: sign of 2*pi*N1 - 6*K*theta3.
// +1 or -1; never 0 by the irrationality of mu*_3.
int action_sign(const RationalMu& mu);

}  // namespace regge
