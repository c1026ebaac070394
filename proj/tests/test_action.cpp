#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "regge/action.hpp"
#include "regge/constants.hpp"
#include "regge/errors.hpp"
#include "regge/rng.hpp"
#include "regge/skeleton.hpp"
#include "regge/triangulation.hpp"

using namespace regge;

TEST_CASE("dihedral angle and flat bone-degree") {
    CHECK(dihedral_angle(2) == doctest::Approx(M_PI / 3).epsilon(1e-15));
    CHECK(dihedral_angle(3) == doctest::Approx(oracle::kTheta3).epsilon(1e-15));
    CHECK(dihedral_angle(4) ==
          doctest::Approx(static_cast<double>(oracle::arccos_newton(0.25L))).epsilon(1e-15));
    CHECK(flat_degree(2) == 6.0);  // hexagonal flat plane, exactly
    CHECK(flat_degree(3) == doctest::Approx(oracle::kMuStar3).epsilon(1e-15));
    CHECK_THROWS_AS(dihedral_angle(1), DomainError);
}

TEST_CASE("frozen extended-precision constants agree with long-double recomputation") {
    long double theta = oracle::arccos_newton(1.0L / 3.0L);
    long double dd = static_cast<long double>(kTheta3.hi) + static_cast<long double>(kTheta3.lo);
    CHECK(std::abs(static_cast<double>(dd - theta)) < 5e-16);  // beyond double precision
    CHECK(kTheta3.hi == static_cast<double>(theta));
    CHECK(std::abs(kTheta3.lo) < 2.3e-16);  // |lo| < ulp(hi)
    // mu*  and its inverse are consistent with theta3 and 2 pi
    long double mustar = 2.0L * 3.14159265358979323846264338327950288L / theta;
    CHECK(kMuStar3.hi == static_cast<double>(mustar));
    CHECK(kInvMuStar3.hi == static_cast<double>(1.0L / mustar));
}

TEST_CASE("simplex volumes") {
    CHECK(simplex_volume(1, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(simplex_volume(2, 1.0) == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-15));
    CHECK(simplex_volume(3, 1.0) == doctest::Approx(1.0 / (6.0 * std::sqrt(2.0))).epsilon(1e-15));
    for (int k = 1; k <= 4; ++k)
        for (double ell : {0.5, 1.0, 3.0})
            CHECK(simplex_volume(k, ell) ==
                  doctest::Approx(oracle::cayley_menger_volume(k, ell)).epsilon(1e-10));
    CHECK_THROWS_AS(simplex_volume(3, 0.0), DomainError);
}

TEST_CASE("raw action of the 5-tetrahedron sphere by edge summation") {
    ActionParams p{1.0, 3};
    GluedTriangulation bd4 = boundary_4_simplex();
    ActionValue raw = regge_action_equal_lengths(bd4, p);
    CHECK(raw.kind == ActionKind::Raw);
    // Independent route: ten degree-3 edges, (1/16pi) * 10 * (2pi - 3 theta3).
    double direct = 10.0 * (2.0 * M_PI - 3.0 * oracle::kTheta3) / (16.0 * M_PI);
    CHECK(raw.value == doctest::Approx(direct).epsilon(1e-14));
    CHECK(raw.value == doctest::Approx(oracle::kRawBd4).epsilon(1e-14));

    ActionValue norm = normalized_action(bd4, p);
    CHECK(norm.kind == ActionKind::VolumeNormalized);
    CHECK(norm.value == doctest::Approx(oracle::kNormBd4).epsilon(1e-14));
    CHECK(norm.value == doctest::Approx(action_at_mu(RationalMu{30, 10}, p)).epsilon(1e-12));

    ActionParams wrong{1.0, 4};
    CHECK_THROWS_AS(regge_action_equal_lengths(bd4, wrong), DomainError);
}

TEST_CASE("action_at_mu reference values") {
    ActionParams p{1.0, 3};
    CHECK(action_at_mu(RationalMu{36, 8}, p) == doctest::Approx(oracle::kA45).epsilon(1e-13));
    CHECK(action_at_mu(RationalMu{36, 7}, p) == doctest::Approx(oracle::kA36over7).epsilon(1e-13));
    CHECK(action_at_mu(RationalMu{6, 1}, p) == doctest::Approx(oracle::kA6).epsilon(1e-13));
    CHECK(action_at_mu(RationalMu{18, 6}, p) == doctest::Approx(oracle::kA3).epsilon(1e-13));
    CHECK(action_at_mu(4.5, p) == doctest::Approx(oracle::kA45).epsilon(1e-12));
}

TEST_CASE("scaling laws in ell") {
    ActionParams base{1.0, 3};
    GluedTriangulation bd4 = boundary_4_simplex();
    double raw1 = regge_action_equal_lengths(bd4, base).value;
    double norm1 = normalized_action(bd4, base).value;
    for (int e = -8; e <= 8; ++e) {
        double ell = std::pow(2.0, e);
        ActionParams p{ell, 3};
        // raw ~ ell^(n-2) = ell, normalized ~ ell^-2
        CHECK(regge_action_equal_lengths(bd4, p).value ==
              doctest::Approx(raw1 * ell).epsilon(1e-12));
        CHECK(normalized_action(bd4, p).value == doctest::Approx(norm1 / (ell * ell)).epsilon(1e-12));
    }
    // ratio examples: doubling ell doubles raw, quarters normalized
    ActionParams two{2.0, 3};
    CHECK(regge_action_equal_lengths(bd4, two).value / raw1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(normalized_action(bd4, two).value / norm1 == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("action_at_mu is strictly decreasing in mu") {
    ActionParams p{1.0, 3};
    Rng rng(99);
    for (int i = 0; i < 2000; ++i) {
        double a = 2.0 + 4.0 * rng.uniform();
        double b = a + 1e-6 + rng.uniform();
        CHECK(action_at_mu(a, p) > action_at_mu(b, p));
    }
}

TEST_CASE("exact sign classification for rational mu") {
    // Signs flip exactly at mu*_3; the hardest case below 10^6 tetrahedra is
    // K = 757991, N1 = 891003 where |2 pi N1 - 6 K theta3| ~ 4.4e-6
    // (found by scanning in 50-digit arithmetic; sign there is negative).
    CHECK(action_sign(RationalMu{6 * 757991, 891003}) == -1);
    CHECK(action_sign(RationalMu{36, 8}) == 1);    // mu = 4.5 < mu*
    CHECK(action_sign(RationalMu{36, 7}) == -1);   // mu = 36/7 > mu*
    CHECK(action_sign(RationalMu{30, 10}) == 1);   // mu = 3

    ActionParams p{1.0, 3};
    Rng rng(4242);
    for (int i = 0; i < 5000; ++i) {
        int64_t k = 1 + static_cast<int64_t>(rng.below(1000000));
        int64_t n1 = k + 1 + static_cast<int64_t>(rng.below(static_cast<uint64_t>(k)));
        RationalMu mu{6 * k, n1};
        int sign = action_sign(mu);
        CHECK(sign != 0);
        double a = action_at_mu(mu, p);
        CHECK(a != 0.0);  // no zero-action triangulation parameters exist
        CHECK((a > 0) == (sign > 0));
    }
    // The double-precision value agrees in sign with the extended route even
    // at the hardest sub-million case.
    CHECK(action_at_mu(RationalMu{6 * 757991, 891003}, p) < 0.0);
}
