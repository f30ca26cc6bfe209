#include <gtest/gtest.h>

#include <set>

#include "qqg/abelian_group.hpp"

using namespace qqg;

TEST(GroupSpec, ElementOrder) {
    GroupSpec g({4, 6});
    EXPECT_EQ(g.elem_order(g.index(std::vector<int>{2, 3})), 2);
    EXPECT_EQ(g.elem_order(g.index(std::vector<int>{1, 1})), 12);
    EXPECT_EQ(g.elem_order(0), 1);
    EXPECT_EQ(g.exponent(), 12);
}

TEST(GroupSpec, IndexingIsLexicographic) {
    GroupSpec g({2, 3});
    EXPECT_EQ(g.size(), 6u);
    EXPECT_EQ(g.exponents(1), (Exponents{0, 1}));
    EXPECT_EQ(g.exponents(3), (Exponents{1, 0}));
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.index(g.exponents(i)), i);
    EXPECT_EQ(g.index(std::vector<int>{-1, 4}), g.index(std::vector<int>{1, 1}));
}

TEST(GroupSpec, GroupLaws) {
    GroupSpec g({2, 4, 3});
    for (std::size_t a = 0; a < g.size(); ++a) {
        EXPECT_EQ(g.mul(a, g.inv(a)), 0u);
        EXPECT_EQ(g.pow(a, g.elem_order(a)), 0u);
        for (std::size_t b = 0; b < g.size(); ++b) EXPECT_EQ(g.mul(a, b), g.mul(b, a));
    }
}

TEST(Subgroup, GeneratedSubgroupPresentation) {
    GroupSpec g({4, 6});
    auto h = subgroup_generated(g, {g.index(std::vector<int>{2, 0}), g.index(std::vector<int>{0, 2})});
    EXPECT_EQ(h.size(), 6u);
    EXPECT_EQ(h.presentation.orders(), (std::vector<int>{6}));
    std::set<std::size_t> closure{0};
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto x : std::set<std::size_t>(closure))
            for (auto y : {g.index(std::vector<int>{2, 0}), g.index(std::vector<int>{0, 2})})
                grew |= closure.insert(g.mul(x, y)).second;
    }
    EXPECT_EQ(std::vector<std::size_t>(closure.begin(), closure.end()), h.members);
    // embedding is a homomorphism
    for (std::size_t a = 0; a < h.size(); ++a)
        for (std::size_t b = 0; b < h.size(); ++b)
            EXPECT_EQ(g.mul(h.embedding[a], h.embedding[b]), h.embedding[h.presentation.mul(a, b)]);
}

TEST(Subgroup, NonCyclic) {
    GroupSpec g({2, 2, 2});
    auto h = subgroup_generated(g, {g.generator(0), g.generator(1), g.mul(g.generator(0), g.generator(1))});
    EXPECT_EQ(h.presentation.orders(), (std::vector<int>{2, 2}));
    auto full = subgroup_generated(g, {g.generator(0), g.generator(1), g.generator(2)});
    EXPECT_EQ(full.size(), 8u);
    auto triv = subgroup_generated(g, {0});
    EXPECT_EQ(triv.size(), 1u);
}

TEST(SquaredCover, ProjectionIsHomomorphism) {
    GroupSpec g({2, 3});
    auto c = squared_cover(g);
    EXPECT_EQ(c.cover.orders(), (std::vector<int>{4, 9}));
    for (std::size_t a = 0; a < c.cover.size(); ++a)
        for (std::size_t b = 0; b < c.cover.size(); ++b)
            EXPECT_EQ(c.projection[c.cover.mul(a, b)], g.mul(c.projection[a], c.projection[b]));
    for (std::size_t x = 0; x < g.size(); ++x) EXPECT_EQ(c.projection[c.section[x]], x);
}
