#include <gtest/gtest.h>

#include "qqg/bosonization.hpp"
#include "qqg/fixtures.hpp"
#include "qqg/nichols.hpp"

using namespace qqg;

namespace {

YDModule rank_one(const GroupSpec& g, std::size_t degree, const std::vector<CycScalar>& chi) {
    DiagonalModule d{g, trivial_cochain3(g), {degree}, {chi}, ExactMatrix(1, 1, chi[degree])};
    return to_module(d);
}

std::vector<int> dims_by_length(const BraidedHopfTruncation& h) {
    std::vector<int> d;
    for (auto l : h.length) {
        if (static_cast<std::size_t>(l) >= d.size()) d.resize(static_cast<std::size_t>(l) + 1, 0);
        ++d[static_cast<std::size_t>(l)];
    }
    return d;
}

// Phi(a,b,c) computed directly from the cocycle coefficients
CycScalar omega_oracle(const CocycleSpec& s, std::size_t a, std::size_t b, std::size_t c) {
    const auto& G = s.group;
    std::vector<int> x, y, z;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        x.push_back(G.exponent_of(a, i));
        y.push_back(G.exponent_of(b, i));
        z.push_back(G.exponent_of(c, i));
    }
    return omega_eval(s, x, y, z);
}

}  // namespace

TEST(NicholsTruncation, RankOneDiagonal) {
    const GroupSpec g({3});
    const CycScalar z = CycScalar::zeta(3);
    auto h = nichols_truncation(rank_one(g, 1, {CycScalar::one(), z, z * z}), 4);
    EXPECT_TRUE(h.complete);
    EXPECT_EQ(dims_by_length(h), (std::vector<int>{1, 1, 1}));
    ASSERT_TRUE(h.product[1][1].has_value());
    EXPECT_FALSE(h.product[1][1]->empty());
    ASSERT_TRUE(h.product[1][2].has_value());
    EXPECT_TRUE(h.product[1][2]->empty());
    // x^2 in the shuffle picture is (1 + q) x (x) x, so Delta(x^2) has middle term (1 + q) x (x) x
    const auto& d = h.coproduct[2];
    ASSERT_EQ(d.size(), 3u);
    EXPECT_EQ(h.antipode[1], (SparseVec{{1, -CycScalar::one()}}));
}

TEST(NicholsTruncation, MatchesHilbertSeries) {
    auto v = fixture("example-3.19");
    auto h = nichols_truncation(v, 4);
    EXPECT_TRUE(h.complete);
    EXPECT_EQ(dims_by_length(h), (std::vector<int>{1, 2, 1}));
    auto r = reduce_and_compute(v);
    ASSERT_FALSE(r.refused());
    EXPECT_EQ(r.report.dims, (std::vector<std::size_t>{1, 2, 1}));
    // exterior algebra: generators square to zero and anticommute up to the action
    for (std::size_t i = 1; i <= 2; ++i) {
        ASSERT_TRUE(h.product[i][i].has_value());
        EXPECT_TRUE(h.product[i][i]->empty());
    }
}

TEST(NicholsTruncation, RefusesNontrivialSupportCocycle) {
    CocycleSpec s(GroupSpec({2}));
    s.c_single = {1};
    auto w = omega_cochain(s);
    auto chars = quasi_characters(tilde_phi(w, 1));
    ASSERT_FALSE(chars.empty());
    auto v = series_module(w, {1}, {chars.front()});
    EXPECT_THROW(nichols_truncation(v, 3), BosonizationRefused);
}

TEST(NicholsTruncation, AntipodeIsConvolutionInverse) {
    auto h = nichols_truncation(fixture("example-3.19"), 3);
    for (std::size_t i = 0; i < h.size(); ++i) {
        SparseVec s;
        for (const auto& [pr, c] : h.coproduct[i])
            for (const auto& [k, ck] : h.antipode[pr.first])
                for (const auto& [t, ct] : *h.product[k][pr.second]) detail::add_to(s, t, c * ck * ct);
        SparseVec want;
        if (i == 0) want[0] = CycScalar::one();
        EXPECT_EQ(s, want) << h.names[i];
    }
}

TEST(Biproduct, SmashProductWithTrivialCocycle) {
    const GroupSpec g({3});
    const CycScalar z = CycScalar::zeta(3);
    auto m = biproduct_build(rank_one(g, 1, {CycScalar::one(), z, z * z}), 3);
    EXPECT_EQ(m.dim(), 9u);
    auto rep = verify_coquasi(m, 2);
    EXPECT_TRUE(rep.ok) << rep.witness;
    EXPECT_GT(rep.checked["quasi-associativity"], 0u);
}

TEST(Biproduct, GroupAlgebraWithCocycle) {
    for (const auto& spec : representatives(GroupSpec({2, 2, 2}), 64)) {
        auto m = biproduct_build(trivial_braided(omega_cochain(spec)));
        EXPECT_EQ(m.dim(), 8u);
        auto rep = verify_coquasi(m, 0);
        EXPECT_TRUE(rep.ok) << rep.witness;
        EXPECT_EQ(rep.checked["associator coherence"], 8u * 8u * 8u * 8u);
    }
}

TEST(Biproduct, Z2CubeExampleIsCoquasiHopf) {
    const auto spec = z2cube_cocycle();
    auto m = biproduct_build(fixture("example-3.19"), 3);
    EXPECT_EQ(m.dim(), 32u);
    auto rep = verify_coquasi(m, 3);
    EXPECT_TRUE(rep.ok) << rep.witness;
    for (const auto& [k, n] : rep.skipped) EXPECT_EQ(n, 0u) << k;
    const auto& G = spec.group;
    for (std::size_t x = 0; x < G.size(); ++x) {
        EXPECT_EQ(m.beta(m.index(0, x)), omega_oracle(spec, x, G.inv(x), x).inverse());
        EXPECT_EQ(m.alpha(m.index(0, x)), CycScalar::one());
        EXPECT_TRUE(m.beta(m.index(1, x)).is_zero());
        for (std::size_t y = 0; y < G.size(); ++y)
            for (std::size_t t = 0; t < G.size(); ++t)
                EXPECT_EQ(m.associator(m.index(0, x), m.index(0, y), m.index(0, t)), omega_oracle(spec, x, y, t));
    }
}

TEST(Biproduct, GrouplikePartIsTwistedGroupAlgebra) {
    auto m = biproduct_build(fixture("example-3.19"), 3);
    EXPECT_TRUE(check_grouplike_part(m, omega_cochain(z2cube_cocycle())));
    CocycleSpec other(GroupSpec({2, 2, 2}));
    other.c_pair[{0, 1}] = 1;
    auto bad = check_grouplike_part(m, omega_cochain(other));
    EXPECT_FALSE(bad.ok);
    EXPECT_FALSE(bad.witness.empty());
}

TEST(Biproduct, CorruptedProductIsDetected) {
    BiproductOptions opt;
    opt.corrupt_product_sign = true;
    auto m = biproduct_build(fixture("example-3.19"), 3, opt);
    auto rep = verify_coquasi(m, 3);
    EXPECT_FALSE(rep.ok);
    EXPECT_FALSE(rep.witness.empty());
}

TEST(Biproduct, CoinvariantsRecoverBraidedTables) {
    auto m = biproduct_build(fixture("example-3.19"), 3);
    const auto& h = m.braided();
    auto r = recover_from_coinvariants(m);
    EXPECT_EQ(r.degree, h.degree);
    EXPECT_EQ(r.coproduct, h.coproduct);
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) EXPECT_EQ(r.product[i][j], h.product[i][j]);
    for (std::size_t g = 0; g < h.group.size(); ++g) EXPECT_EQ(r.action[g], h.action[g]) << g;
}
