#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "qqg/cyclotomic.hpp"
#include "qqg/matrix.hpp"

using namespace qqg;

namespace {

// Coefficients of prod_{gcd(k,N)=1} (x - e^{2 pi i k / N}) in floating point, rounded.
IntPoly numeric_cyclotomic(int n) {
    std::vector<std::complex<double>> p{1.0};
    for (int k = 1; k <= n; ++k) {
        if (std::gcd(k, n) != 1) continue;
        std::complex<double> root = std::polar(1.0, 2.0 * M_PI * k / n);
        std::vector<std::complex<double>> q(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= root * p[i];
        }
        p = q;
    }
    IntPoly out;
    for (auto c : p) out.push_back(std::llround(c.real()));
    return out;
}

// Order by repeated multiplication, bounded by 2N.
std::optional<int> brute_order(const CycScalar& s) {
    if (s.is_zero()) return std::nullopt;
    CycScalar p = s;
    for (int k = 1; k <= 2 * s.root_order(); ++k) {
        if (p.is_one()) return k;
        p *= s;
    }
    return std::nullopt;
}

}  // namespace

TEST(CycloPoly, SmallOrders) {
    EXPECT_EQ(cyclo_poly(1), (IntPoly{-1, 1}));
    EXPECT_EQ(cyclo_poly(2), (IntPoly{1, 1}));
    EXPECT_EQ(cyclo_poly(12), (IntPoly{1, 0, -1, 0, 1}));
}

TEST(CycloPoly, MatchesNumericProduct) {
    for (int n = 1; n <= 60; ++n) EXPECT_EQ(cyclo_poly(n), numeric_cyclotomic(n)) << "N=" << n;
}

TEST(CycloPoly, RejectsNonPositive) { EXPECT_THROW(cyclo_poly(0), std::invalid_argument); }

TEST(CycScalar, ZetaPowersWrap) {
    for (int n = 1; n <= 24; ++n) {
        EXPECT_TRUE(CycScalar::zeta(n, n).is_one());
        EXPECT_EQ(CycScalar::zeta(n, 1).pow(n), CycScalar::one(n));
        EXPECT_EQ(CycScalar::zeta(n, -1) * CycScalar::zeta(n, 1), CycScalar::one(n));
    }
}

TEST(CycScalar, MixedOrdersEmbed) {
    // zeta_4 * zeta_6 = zeta_12^5
    EXPECT_EQ(CycScalar::zeta(4) * CycScalar::zeta(6), CycScalar::zeta(12, 5));
    EXPECT_EQ(CycScalar::zeta(6, 3), CycScalar::rational(-1));
    EXPECT_EQ(CycScalar::zeta(3).embed(12), CycScalar::zeta(12, 4));
    EXPECT_THROW(CycScalar::zeta(3).embed(10), std::invalid_argument);
}

TEST(CycScalar, InverseRoundTrip) {
    for (int n : {3, 5, 7, 8, 9, 12, 15, 16, 20, 24}) {
        CycScalar a = CycScalar::one(n) + CycScalar::zeta(n) * CycScalar::rational(3, n) - CycScalar::zeta(n, 2);
        if (a.is_zero()) continue;
        EXPECT_TRUE((a * a.inverse()).is_one()) << "N=" << n;
    }
    EXPECT_THROW(CycScalar::zero(5).inverse(), std::domain_error);
}

TEST(UnityOrder, Examples) {
    EXPECT_EQ(unity_order(CycScalar::one(1)), 1);
    EXPECT_EQ(unity_order(CycScalar::zeta(6, 3)), 2);
    EXPECT_EQ(unity_order(CycScalar::one(4) + CycScalar::zeta(4)), std::nullopt);
    EXPECT_EQ(unity_order(CycScalar::zero(7)), std::nullopt);
}

TEST(UnityOrder, AgreesWithRepeatedMultiplication) {
    for (int n = 1; n <= 24; ++n)
        for (int k = 0; k < n; ++k) {
            CycScalar z = CycScalar::zeta(n, k);
            EXPECT_EQ(unity_order(z), brute_order(z)) << n << " " << k;
            EXPECT_EQ(unity_order(-z), brute_order(-z)) << n << " " << k;
            CycScalar w = z + CycScalar::rational(2, n);
            EXPECT_EQ(unity_order(w), brute_order(w));
        }
}

TEST(ExactRank, Examples) {
    ExactMatrix a(2, 2, CycScalar::one(3));
    EXPECT_EQ(rank(a), 1u);
    ExactMatrix b(2, 2, CycScalar::zero(3));
    b(0, 0) = CycScalar::one(3);
    b(0, 1) = CycScalar::zeta(3);
    b(1, 0) = CycScalar::zeta(3);
    b(1, 1) = CycScalar::zeta(3, 2);
    EXPECT_EQ(rank(b), 1u);  // second row = zeta * first
    b(1, 1) = CycScalar::one(3);
    EXPECT_EQ(rank(b), 2u);
    EXPECT_EQ(rank(ExactMatrix(3, 4, CycScalar::zero(1))), 0u);
}

TEST(ExactRank, NullspaceIsKernel) {
    ExactMatrix m(2, 3, CycScalar::zero(4));
    m(0, 0) = CycScalar::one(4);
    m(0, 1) = CycScalar::zeta(4);
    m(1, 2) = CycScalar::one(4) + CycScalar::zeta(4);
    auto ns = nullspace(m);
    ASSERT_EQ(ns.size(), 1u);
    for (const auto& x : mat_vec(m, ns[0])) EXPECT_TRUE(x.is_zero());
}
