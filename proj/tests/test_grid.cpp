#include <gtest/gtest.h>

#include <cmath>

#include "bifbm/error.hpp"
#include "bifbm/grid.hpp"

using bifbm::GridError;
using bifbm::TimeGrid;

TEST(TimeGrid, RejectsInvalidSequences) {
    EXPECT_THROW(TimeGrid({}), GridError);
    EXPECT_THROW(TimeGrid({1.0, 1.0}), GridError);
    EXPECT_THROW(TimeGrid({2.0, 1.0}), GridError);
    EXPECT_THROW(TimeGrid({-0.5, 1.0}), GridError);
    EXPECT_THROW(TimeGrid({0.0, NAN}), GridError);
    EXPECT_NO_THROW(TimeGrid({0.0}));
}

TEST(TimeGrid, UniformIncludesEndpoints) {
    const auto g = TimeGrid::uniform(0.0, 1.0, 5);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_DOUBLE_EQ(g[2], 0.5);
    EXPECT_TRUE(g.is_uniform());
    EXPECT_TRUE(g.starts_at_zero());
}

TEST(TimeGrid, GeometricSpansRange) {
    const auto g = TimeGrid::geometric(0x1.0p-6, 0x1.0p6, 24);
    ASSERT_EQ(g.size(), 24u);
    EXPECT_EQ(g.front(), 0.015625);
    EXPECT_EQ(g.back(), 64.0);
    EXPECT_NEAR(g[1] / g[0], g[23] / g[22], 1e-12);
    EXPECT_FALSE(g.is_uniform());
    EXPECT_THROW((void)TimeGrid::geometric(0.0, 1.0, 4), GridError);
}

TEST(TimeGrid, ParsesMiniLanguage) {
    EXPECT_EQ(TimeGrid::parse("uniform:0:1:5"), TimeGrid::uniform(0.0, 1.0, 5));
    EXPECT_EQ(TimeGrid::parse("geom:0.015625:64:24"), TimeGrid::geometric(0.015625, 64.0, 24));
    EXPECT_EQ(TimeGrid::parse("list:1,2,3.5"), TimeGrid({1.0, 2.0, 3.5}));
    EXPECT_THROW((void)TimeGrid::parse("list:1,1"), GridError);
    EXPECT_THROW((void)TimeGrid::parse("uniform:0:1"), GridError);
    EXPECT_THROW((void)TimeGrid::parse("spiral:0:1:3"), GridError);
    EXPECT_THROW((void)TimeGrid::parse("list:1,x"), GridError);
    EXPECT_THROW((void)TimeGrid::parse("0,1,2"), GridError);
}

TEST(TimeGrid, MergedIsSortedUnion) {
    const auto g = TimeGrid({1.0, 3.0}).merged(TimeGrid({2.0, 3.0, 1000.0}));
    EXPECT_EQ(g, TimeGrid({1.0, 2.0, 3.0, 1000.0}));
}
