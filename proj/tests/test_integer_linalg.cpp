#include <gtest/gtest.h>

#include <random>

#include "qqg/integer_linalg.hpp"

using namespace qqg;

namespace {

// Exhaustive search over Z_L^n for a solution, where L is the lcm of the moduli.
bool brute_solvable(const std::vector<std::vector<long long>>& a, const std::vector<long long>& b,
                    const std::vector<long long>& m) {
    long long L = 1;
    for (auto x : m) L = lcm_ll(L, x);
    std::size_t n = a[0].size();
    std::vector<long long> x(n, 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) {
            long long acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc += a[i][j] * x[j];
            ok = ((acc - b[i]) % m[i] + m[i]) % m[i] == 0;
        }
        if (ok) return true;
        std::size_t j = 0;
        while (j < n && ++x[j] == L) x[j++] = 0;
        if (j == n) return false;
    }
}

}  // namespace

TEST(SolveLinearMod, DocumentedExample) {
    auto x = solve_linear_mod({{1, 1}, {0, 2}}, {1, 2}, {4, 4});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, (std::vector<long long>{0, 1}));
}

TEST(SolveLinearMod, Inconsistent) {
    EXPECT_FALSE(solve_linear_mod({{2}}, {1}, {4}).has_value());
    EXPECT_FALSE(solve_linear_mod({{1, 1}, {1, 1}}, {0, 1}, {6, 6}).has_value());
}

TEST(SolveLinearMod, MixedModuli) {
    // x = 1 mod 2, x = 2 mod 3 -> x = 5 mod 6
    auto x = solve_linear_mod({{1}, {1}}, {1, 2}, {2, 3});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ((*x)[0] % 6, 5);
}

TEST(SolveLinearMod, AgreesWithExhaustiveSearch) {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
        std::vector<long long> moduli;
        for (std::size_t i = 0; i < rows; ++i) moduli.push_back(std::vector<long long>{2, 3, 4, 6, 8, 9, 12}[rng() % 7]);
        std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols));
        std::vector<long long> b(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            for (auto& v : a[i]) v = static_cast<long long>(rng() % 13) - 6;
            b[i] = static_cast<long long>(rng() % 13) - 6;
        }
        long long L = 1;
        for (auto m : moduli) L = lcm_ll(L, m);
        if (std::pow(static_cast<double>(L), static_cast<double>(cols)) > 2e5) continue;
        auto x = solve_linear_mod(a, b, moduli);  // throws if a returned vector fails the system
        EXPECT_EQ(x.has_value(), brute_solvable(a, b, moduli)) << "trial " << trial;
    }
}

TEST(SmithNormalForm, DiagonalAndTransforms) {
    IntMatrix a(2, 3, mpz_class(0));
    a(0, 0) = 2; a(0, 1) = 4; a(0, 2) = 4;
    a(1, 0) = -6; a(1, 1) = 6; a(1, 2) = 12;
    auto s = smith_normal_form(a);
    EXPECT_EQ(s.u * a * s.v, s.d);
    EXPECT_EQ(s.rank, 2u);
    EXPECT_EQ(s.d(0, 0), 2);
    EXPECT_EQ(s.d(1, 1), 6);
}
