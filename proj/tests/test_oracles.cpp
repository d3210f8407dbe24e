#include <gtest/gtest.h>

#include <cmath>

#include "bifbm/error.hpp"
#include "bifbm/kernels.hpp"
#include "bifbm/oracles.hpp"
#include "bifbm/quadrature.hpp"
#include "mp_oracle.hpp"

using namespace bifbm;

TEST(Quadrature, PolynomialsAreExact) {
    const QuadratureConfig cfg;
    const auto r = integrate_adaptive([](double x) { return x * x * x - 2 * x; }, 0.0, 2.0, cfg);
    EXPECT_NEAR(r.value, 0.0, 1e-14);
    EXPECT_NEAR(integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, cfg).value,
                std::exp(1.0) - 1.0, 1e-14);
}

TEST(Quadrature, IntegrableEndpointSingularity) {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-9;
    cfg.rel_tol = 1e-9;
    const auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, cfg);
    EXPECT_NEAR(r.value, 2.0, 1e-8);
    EXPECT_GT(r.subdivisions, 1u);
}

TEST(Quadrature, ExhaustedBudgetThrows) {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-300;
    cfg.rel_tol = 1e-300;
    cfg.max_subdivisions = 16;
    EXPECT_THROW((void)integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 0.0, 1.0, cfg),
                 ConvergenceError);
}

TEST(Quadrature, ConfigValidation) {
    QuadratureConfig cfg;
    cfg.abs_tol = 0.0;
    EXPECT_THROW(cfg.validate(), ParameterError);
    cfg = {};
    cfg.max_subdivisions = 4;
    EXPECT_THROW(cfg.validate(), ParameterError);
}

TEST(PowerIntegral, MatchesPower) {
    EXPECT_NEAR(power_integral(0.5, 1.0), 1.0, 1e-8);
    EXPECT_NEAR(power_integral(0.3, 7.0), oracle::pow_ref(7.0, 0.3), 1e-8);
    EXPECT_NEAR(power_integral(0.3, 7.0), 1.79279, 1e-5);
    EXPECT_NEAR(power_integral(0.9, 0.01), oracle::pow_ref(0.01, 0.9), 1e-8);
}

TEST(CGammaIntegral, MatchesClosedForm) {
    EXPECT_NEAR(c_gamma_integral(0.25, 2.0, 3.0), oracle::c_gamma(0.25, 2.0, 3.0), 1e-9);
    EXPECT_NEAR(c_gamma_integral(0.25, 2.0, 3.0), 0.1792748, 1e-7);
    EXPECT_NEAR(c_gamma_integral(0.7, 0.0, 3.0), 0.0, 1e-15);
    EXPECT_NEAR(c_gamma_integral(0.7, 3.0, 0.5), oracle::c_gamma(0.7, 3.0, 0.5), 1e-9);
}

TEST(QGammaIntegral, MatchesClosedForm) {
    EXPECT_NEAR(q_gamma_integral(0.5, 1.0, 2.0), oracle::q_gamma(0.5, 1.0, 2.0), 1e-8);
    EXPECT_NEAR(q_gamma_integral(0.5, 1.0, 2.0), std::sqrt(2.0) - 1.0, 1e-8);
    EXPECT_NEAR(q_gamma_integral(0.8, 2.0, 2.0), oracle::pow_ref(2.0, 0.8), 1e-8);
    EXPECT_NEAR(q_gamma_integral(0.8, 0.0, 2.0), 0.0, 1e-15);
}

TEST(Oracles, GammaOutsideUnitIntervalIsRejected) {
    for (double g : {0.0, 1.0, 1.5, -0.2}) {
        EXPECT_THROW((void)power_integral(g, 1.0), ParameterError) << g;
        EXPECT_THROW((void)q_gamma_integral(g, 1.0, 2.0), ParameterError) << g;
        EXPECT_THROW((void)c_gamma_integral(g, 1.0, 2.0), ParameterError) << g;
    }
}

class OracleReportTest : public ::testing::TestWithParam<double> {};

TEST_P(OracleReportTest, PassesOnEightPointGrid) {
    const double gamma = GetParam();
    const auto r = oracle_report(gamma, TimeGrid::geometric(0.25, 4.0, 8));
    EXPECT_TRUE(r.pass()) << "gamma=" << gamma << " abs=" << r.max_abs_error << " at " << r.worst_kernel
                          << "(" << r.worst_s << "," << r.worst_t << ")";
    EXPECT_EQ(r.comparisons, 36u * 2u + 8u);
    EXPECT_LT(r.max_abs_error, 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Gammas, OracleReportTest, ::testing::Values(0.1, 0.3, 0.5, 0.7, 0.9));

TEST(OracleReport, DoublingCutoffChangesLittle) {
    const auto grid = TimeGrid::geometric(0.25, 4.0, 8);
    for (double gamma : {0.1, 0.5, 0.9}) {
        QuadratureConfig wide;
        wide.cutoff_multiplier = 2.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (std::size_t j = i; j < grid.size(); ++j) {
                const double a = q_gamma_integral(gamma, grid[i], grid[j]);
                const double b = q_gamma_integral(gamma, grid[i], grid[j], wide);
                EXPECT_NEAR(a, b, 1e-8) << gamma << " " << grid[i] << " " << grid[j];
            }
        }
    }
}

TEST(PowerIntegral, MonotoneInX) {
    double prev = 0.0;
    for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
        const double v = power_integral(0.6, x);
        EXPECT_GT(v, prev) << x;
        prev = v;
    }
}
