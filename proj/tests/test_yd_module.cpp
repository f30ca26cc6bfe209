#include <gtest/gtest.h>

#include "qqg/coboundary.hpp"
#include "qqg/fixtures.hpp"
#include "qqg/yd_module.hpp"

using namespace qqg;

namespace {

// Dimension of the space of intertwiners T with T a(e) = b(e) T for all e,
// and whether some basis vector of it is invertible.
std::pair<std::size_t, bool> intertwiners(const YDComponent& a, const YDComponent& b) {
    const std::size_t n = a.dim;
    ExactMatrix sys(a.action.size() * n * n, n * n, CycScalar::zero(1));
    for (std::size_t e = 0; e < a.action.size(); ++e)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t row = (e * n + i) * n + j;
                // (T A)_{ij} - (B T)_{ij}
                for (std::size_t k = 0; k < n; ++k) {
                    sys(row, i * n + k) += a.action[e](k, j);
                    sys(row, k * n + j) -= b.action[e](i, k);
                }
            }
    auto ns = nullspace(sys);
    bool invertible = false;
    for (const auto& v : ns) {
        ExactMatrix t(n, n, CycScalar::zero(1));
        for (std::size_t i = 0; i < n * n; ++i) t.data()[i] = v[i];
        invertible = invertible || rank(t) == n;
    }
    return {ns.size(), invertible};
}

std::size_t elem(const GroupSpec& g, std::vector<int> e) { return g.index(e); }

}  // namespace

TEST(Fixtures, Z2CubeSimpleVerifies) {
    auto v = example_z2cube_simple();
    EXPECT_TRUE(verify_yd_module(v).ok) << verify_yd_module(v).witness;
    EXPECT_FALSE(is_diagonal(v).has_value());
    EXPECT_EQ(v.dim(), 2u);
}

TEST(Fixtures, PrintedTablePassesRatioCheckAndDiffersByScalars) {
    auto printed = example_z2cube_printed_table();
    auto completed = example_z2cube_simple();
    EXPECT_TRUE(ratio_precheck(printed).ok);
    EXPECT_FALSE(verify_yd_module(printed).ok);
    const auto& G = printed.group;
    for (std::size_t e = 0; e < G.size(); ++e) {
        const auto& p = printed.components[0].action[e];
        const auto& c = completed.components[0].action[e];
        bool plus = p == c, minus = p == scaled(c, CycScalar::rational(-1));
        EXPECT_TRUE(plus || minus) << G.format(e);
    }
}

TEST(Fixtures, AllNamedFixturesVerify) {
    for (const auto& name : fixture_names()) {
        auto v = fixture(name);
        EXPECT_TRUE(verify_yd_module(v).ok) << name << ": " << verify_yd_module(v).witness;
        EXPECT_FALSE(is_diagonal(v).has_value()) << name;
    }
}

TEST(VerifyYD, NegatedGeneratorFailsOnThatPair) {
    auto v = example_z2cube_simple();
    const auto& G = v.group;
    const std::size_t e2 = elem(G, {0, 1, 0}), e3 = elem(G, {0, 0, 1});
    auto& a = v.components[0].action[e3];
    a = scaled(a, CycScalar::rational(-1));
    auto r = verify_yd_module(v);
    ASSERT_FALSE(r.ok);
    ASSERT_EQ(r.elements.size(), 2u);
    std::vector<std::size_t> got = r.elements;
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, (std::vector<std::size_t>{e3, e2}));
}

TEST(VerifyYD, OrdinaryRepresentationPasses) {
    GroupSpec g({3});
    YDModule v{g, trivial_cochain3(g), {}};
    YDComponent c{1, 1, {}};
    for (int k = 0; k < 3; ++k) c.action.push_back(ExactMatrix(1, 1, CycScalar::zeta(3, k)));
    v.components.push_back(c);
    EXPECT_TRUE(verify_yd_module(v).ok);
}

TEST(Simples, Z2CubeAtE1) {
    auto spec = z2cube_cocycle();
    SimplesSummary sum;
    auto simples = simples_at(spec, elem(spec.group, {1, 0, 0}), &sum);
    ASSERT_EQ(simples.size(), 2u);
    EXPECT_EQ(sum.dimension, 2u);
    EXPECT_EQ(sum.radical_order * sum.dimension * sum.dimension, 8u);
    int iso_to_fixture = 0;
    auto fx = example_z2cube_simple();
    for (const auto& s : simples) {
        EXPECT_TRUE(verify_yd_module(s).ok);
        EXPECT_EQ(s.components[0].dim, 2u);
        auto [d, inv] = intertwiners(s.components[0], fx.components[0]);
        if (inv) ++iso_to_fixture;
        EXPECT_LE(d, 1u);
    }
    EXPECT_EQ(iso_to_fixture, 1);
    auto [d01, inv01] = intertwiners(simples[0].components[0], simples[1].components[0]);
    EXPECT_EQ(d01, 0u);
    EXPECT_FALSE(inv01);
}

TEST(Simples, AbelianCocycleGivesCharacters) {
    CocycleSpec s(GroupSpec({2, 4}));
    s.c_single = {1, 3};
    s.c_pair[{0, 1}] = 1;
    for (std::size_t g = 0; g < s.group.size(); ++g) {
        auto simples = simples_at(s, g);
        EXPECT_EQ(simples.size(), 8u);
        for (const auto& v : simples) {
            EXPECT_EQ(v.dim(), 1u);
            EXPECT_TRUE(verify_yd_module(v).ok);
        }
    }
}

TEST(Simples, Z3CubeDimensionThree) {
    CocycleSpec s(GroupSpec({3, 3, 3}));
    s.c_triple[{0, 1, 2}] = 1;
    SimplesSummary sum;
    auto simples = simples_at(s, s.group.generator(0), &sum);
    EXPECT_EQ(sum.dimension, 3u);
    EXPECT_EQ(simples.size(), 3u);
    for (const auto& v : simples) EXPECT_TRUE(verify_yd_module(v).ok);
}

TEST(Tensor, DualProductIsOrdinary) {
    auto v = example_z2cube_simple();
    auto vd = dual(v);
    EXPECT_TRUE(verify_yd_module(vd).ok);
    EXPECT_EQ(vd.components[0].degree, v.components[0].degree);  // e1 is an involution
    auto dd = dual(vd);
    EXPECT_EQ(dd.components[0].action, v.components[0].action);
    auto t = tensor(v, vd);
    EXPECT_TRUE(verify_yd_module(t).ok);
    EXPECT_EQ(t.dim(), 4u);
    EXPECT_EQ(t.components[0].degree, 0u);
    auto diag = is_diagonal(t);
    ASSERT_TRUE(diag.has_value());  // ordinary representation: sum of 1-dimensional subobjects
    EXPECT_EQ(diag->degrees.size(), 4u);
}

TEST(Tensor, OneDimensionalCharactersMultiply) {
    GroupSpec g({4});
    YDModule a{g, trivial_cochain3(g), {}}, b = a;
    YDComponent ca{1, 1, {}}, cb{2, 1, {}};
    for (int k = 0; k < 4; ++k) {
        ca.action.push_back(ExactMatrix(1, 1, CycScalar::zeta(4, k)));
        cb.action.push_back(ExactMatrix(1, 1, CycScalar::zeta(4, 2 * k)));
    }
    a.components.push_back(ca);
    b.components.push_back(cb);
    auto t = tensor(a, b);
    ASSERT_EQ(t.components.size(), 1u);
    EXPECT_EQ(t.components[0].degree, 3u);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(t.components[0].action[k](0, 0), CycScalar::zeta(4, 3 * k));
}

TEST(Tensor, SimplesTensorVerifies) {
    auto spec = z2cube_cocycle();
    auto a = simples_at(spec, elem(spec.group, {1, 0, 0}));
    auto b = simples_at(spec, elem(spec.group, {0, 1, 1}));
    auto t = tensor(a[0], b[1]);
    EXPECT_TRUE(verify_yd_module(t).ok) << verify_yd_module(t).witness;
}

TEST(Restrict, Z2CubeSimpleToSupport) {
    auto r = restrict_support(example_z2cube_simple());
    EXPECT_EQ(r.module.group.orders(), (std::vector<int>{2}));
    EXPECT_TRUE(verify_yd_module(r.module).ok);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z) EXPECT_EQ(r.module.cocycle.at(x, y, z) % r.module.cocycle.root_order, 0);
    EXPECT_EQ(r.module.components[0].action[1], scaled(identity_matrix(2), CycScalar::rational(-1)));
}

TEST(Restrict, SumOfTwoSummands) {
    auto r = restrict_support(direct_sum(z2cube_summand(1), z2cube_summand(2)));
    EXPECT_EQ(r.support.size(), 4u);
    EXPECT_TRUE(verify_yd_module(r.module).ok);
    auto full = restrict_support(direct_sum(direct_sum(z2cube_summand(1), z2cube_summand(2)), z2cube_summand(3)));
    EXPECT_EQ(full.support.size(), 8u);
}

TEST(LiftCover, ActionThroughProjection) {
    auto r = restrict_support(example_z2cube_simple());
    auto pi = squared_cover(r.module.group);
    auto lifted = lift_cover(r.module, pi);
    EXPECT_TRUE(verify_yd_module(lifted).ok);
    const auto minus = scaled(identity_matrix(2), CycScalar::rational(-1));
    EXPECT_EQ(lifted.components[0].action[1], minus);
    EXPECT_EQ(lifted.components[0].action[3], minus);
    EXPECT_EQ(lifted.components[0].action[2], identity_matrix(2));
}

TEST(Twist, IdentityAndInverse) {
    auto spec = z2cube_cocycle();
    auto v = simples_at(spec, elem(spec.group, {1, 0, 0}))[0];
    Cochain2 triv(spec.group, 2);
    EXPECT_EQ(twist(v, triv).components[0].action, v.components[0].action);
    Cochain2 j(spec.group, 4);
    for (std::size_t i = 0; i < j.exps.size(); ++i) j.exps[i] = static_cast<int>((i * 7 + 3) % 4);
    for (std::size_t x = 0; x < 8; ++x) j.at(0, x) = j.at(x, 0) = 0;
    auto t = twist(v, j);
    EXPECT_TRUE(verify_yd_module(t).ok) << verify_yd_module(t).witness;
    EXPECT_EQ(twist(t, inverse_cochain(j)).components[0].action, v.components[0].action);
    Cochain2 sym(spec.group, 4);
    for (std::size_t x = 1; x < 8; ++x)
        for (std::size_t y = 1; y < 8; ++y) sym.at(x, y) = static_cast<int>((x + y) % 4);
    EXPECT_EQ(twist(v, sym).components[0].action, v.components[0].action);
}

TEST(Twist, LiftedModuleBecomesOrdinary) {
    // Z2 with c_1 = 1: degree-g simples have g acting by a primitive 4th root of unity
    CocycleSpec s(GroupSpec({2}));
    s.c_single = {1};
    auto simples = simples_at(s, 1);
    ASSERT_EQ(simples.size(), 2u);
    auto pi = squared_cover(s.group);
    for (const auto& v : simples) {
        auto lifted = lift_cover(v, pi);
        EXPECT_TRUE(verify_yd_module(lifted).ok);
        auto j = solve_coboundary(lifted.cocycle);
        ASSERT_TRUE(j.has_value());
        auto t = twist(lifted, inverse_cochain(*j));
        EXPECT_TRUE(verify_yd_module(t).ok);
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t y = 0; y < 4; ++y)
                for (std::size_t z = 0; z < 4; ++z) EXPECT_EQ(t.cocycle.at(x, y, z) % t.cocycle.root_order, 0);
        auto d = is_diagonal(t);
        ASSERT_TRUE(d.has_value());
        EXPECT_EQ(unity_order(d->q(0, 0)), 4);
    }
}

TEST(Diagonal, RecoversStructureConstants) {
    auto r = restrict_support(direct_sum(z2cube_summand(1), z2cube_summand(2)));
    auto d = is_diagonal(r.module);
    ASSERT_TRUE(d.has_value());
    ASSERT_EQ(d->q.rows(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(d->q(i, i), CycScalar::rational(-1));
    EXPECT_TRUE(verify_yd_module(to_module(*d)).ok);
}
