#include <gtest/gtest.h>

#include <cmath>

#include "bifbm/error.hpp"
#include "bifbm/region.hpp"

using namespace bifbm;

TEST(ExplorationGrid, Contents) {
    const auto g = default_exploration_grid();
    EXPECT_EQ(g.size(), 25u);
    EXPECT_EQ(g.front(), 0.015625);
    EXPECT_EQ(g[23], 64.0);
    EXPECT_EQ(g.back(), 1000.0);
}

TEST(ScanRegion, TheoremRegionCellsArePsd) {
    const auto grid = TimeGrid::geometric(0.125, 8.0, 12);
    const auto scan = scan_region({0.25, 4.0}, {0.05, 1.0}, {8, 8}, grid, kDefaultPsdRelTol, 4);
    ASSERT_EQ(scan.verdicts.size(), 64u);
    for (std::size_t h = 0; h < scan.H_values.size(); ++h) {
        for (std::size_t k = 0; k < scan.K_values.size(); ++k) {
            const double H = scan.H_values[h], K = scan.K_values[k];
            if (in_theorem_region(H, K)) EXPECT_EQ(scan.verdict(h, k), CellVerdict::PSD) << H << " " << K;
        }
    }
    EXPECT_EQ(scan.H_values.front(), 0.25);
    EXPECT_EQ(scan.H_values.back(), 4.0);
}

TEST(ScanRegion, NecessaryConditionCellsAreNotPsd) {
    const auto scan = scan_region({2.0, 3.0}, {0.6, 0.9}, {2, 2}, default_exploration_grid());
    for (CellVerdict v : scan.verdicts) EXPECT_EQ(v, CellVerdict::NotPSD);
}

TEST(ScanRegion, ThreadCountDoesNotChangeResult) {
    const auto grid = TimeGrid::geometric(0.125, 8.0, 12);
    const auto a = scan_region({0.5, 3.0}, {0.1, 1.0}, {5, 5}, grid, kDefaultPsdRelTol, 1);
    const auto b = scan_region({0.5, 3.0}, {0.1, 1.0}, {5, 5}, grid, kDefaultPsdRelTol, 6);
    EXPECT_EQ(a.min_eigs, b.min_eigs);
    EXPECT_EQ(a.verdicts, b.verdicts);
}

TEST(ScanRegion, RejectsBadArguments) {
    const auto grid = default_exploration_grid();
    EXPECT_THROW((void)scan_region({1.0, 0.5}, {0.1, 1.0}, {4, 4}, grid), ParameterError);
    EXPECT_THROW((void)scan_region({0.5, 1.0}, {0.1, 1.0}, {1, 4}, grid), ParameterError);
}

TEST(CriticalK, BracketInvariants) {
    const double res = 1e-3;
    for (double H : {1.5, 2.0, 4.0}) {
        const auto e = critical_k(H, default_exploration_grid(), res);
        ASSERT_EQ(e.status, CriticalKStatus::Bracketed) << H;
        EXPECT_LT(e.K_low, e.K_high);
        EXPECT_LE(e.K_high - e.K_low, res);
        EXPECT_GE(e.K_low, 1.0 / (2.0 * H) - 1e-12);
        EXPECT_LE(e.K_high, 1.0 / H + 1e-12);
        const auto g = default_exploration_grid();
        EXPECT_EQ(psd_check(build_gram(KernelSpec::bifbm(H, e.K_low), g)).verdict, PsdVerdict::PSD);
        EXPECT_EQ(psd_check(build_gram(KernelSpec::bifbm(H, e.K_high), g)).verdict, PsdVerdict::NotPSD);
    }
}

TEST(CriticalK, KnownBracketForH15) {
    const auto e = critical_k(1.5, default_exploration_grid(), 1e-3);
    ASSERT_EQ(e.status, CriticalKStatus::Bracketed);
    EXPECT_NEAR(e.K_mid(), 0.6024, 2e-3);
}

TEST(CriticalK, FinerGridNeverRaisesTheBracket) {
    // A superset grid can only find more negative directions.
    const auto coarse = TimeGrid::geometric(0.125, 8.0, 12).merged(TimeGrid({1000.0}));
    const auto fine = coarse.merged(default_exploration_grid());
    for (double H : {1.5, 3.0}) {
        const auto a = critical_k(H, coarse, 1e-3);
        const auto b = critical_k(H, fine, 1e-3);
        ASSERT_EQ(a.status, CriticalKStatus::Bracketed);
        ASSERT_EQ(b.status, CriticalKStatus::Bracketed);
        EXPECT_LE(b.K_high, a.K_high + 1e-12) << H;
    }
}

TEST(HkTrend, ValidatesInput) {
    const std::vector<double> bad{1.5, 1.2};
    const std::vector<double> small{0.8};
    EXPECT_THROW((void)hk_trend(bad, default_exploration_grid(), 1e-2), ParameterError);
    EXPECT_THROW((void)hk_trend(small, default_exploration_grid(), 1e-2), ParameterError);
}

TEST(HkTrend, MidpointsLieBetweenOneAndTwo) {
    const std::vector<double> Hs{2.0, 4.0};
    const auto trend = hk_trend(Hs, default_exploration_grid(), 1e-2);
    ASSERT_EQ(trend.size(), 2u);
    for (const auto& p : trend) {
        EXPECT_GE(p.two_hk_mid, 1.0 - 1e-2);
        EXPECT_LE(p.two_hk_mid, 2.0 + 1e-2);
    }
}
