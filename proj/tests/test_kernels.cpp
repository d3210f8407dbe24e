#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "bifbm/error.hpp"
#include "bifbm/kernels.hpp"
#include "mp_oracle.hpp"

using namespace bifbm;

namespace {

// TheoremRegion pairs used by several identity checks.
const std::vector<std::pair<double, double>> kTheoremPairs = {
    {0.3, 0.9}, {0.5, 1.0}, {0.6, 0.8}, {0.8, 0.5}, {1.0, 0.5},
    {1.2, 0.4}, {1.5, 1.0 / 3.0}, {2.0, 0.25}, {3.0, 0.1}, {4.0, 0.125},
};

std::vector<double> geometric_points(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
    return out;
}

KernelSpec random_spec(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> h(0.05, 4.0), k(0.05, 1.0), g(0.05, 3.0), unit(0.05, 1.0);
    switch (rng() % 9) {
        case 0: return KernelSpec::bifbm(h(rng), k(rng));
        case 1: return KernelSpec::fbm(unit(rng));
        case 2: return KernelSpec::c_gamma(g(rng));
        case 3: return KernelSpec::q_gamma(g(rng));
        case 4: return KernelSpec::lei_nualart_remainder(h(rng), k(rng));
        case 5: return KernelSpec::min();
        case 6: return KernelSpec::time_change(KernelSpec::c_gamma(k(rng)), h(rng));
        case 7: return KernelSpec::scale(KernelSpec::q_gamma(g(rng)), unit(rng));
        default: return KernelSpec::sum(KernelSpec::bifbm(h(rng), k(rng)), KernelSpec::min());
    }
}

}  // namespace

TEST(Kernels, BifBmDiagonalIsOneAtUnitTime) {
    EXPECT_DOUBLE_EQ(eval_kernel(KernelSpec::bifbm(2.0, 0.25), 1.0, 1.0), 1.0);
}

TEST(Kernels, BifBmVanishesAgainstTimeZero) {
    const auto spec = KernelSpec::bifbm(1.3, 0.7);
    EXPECT_EQ(eval_kernel(spec, 3.5, 0.0), 0.0);
    EXPECT_EQ(eval_kernel(spec, 0.0, 3.5), 0.0);
    EXPECT_EQ(eval_kernel(spec, 0.0, 0.0), 0.0);
}

TEST(Kernels, BifBmOffDiagonalMatchesHighPrecision) {
    const double expected = oracle::bifbm(2.0, 0.25, 1.0, 2.0);
    EXPECT_NEAR(expected, 0.8665801, 1e-7);
    EXPECT_NEAR(eval_kernel(KernelSpec::bifbm(2.0, 0.25), 1.0, 2.0), expected, 1e-15);
}

TEST(Kernels, EveryVariantMatchesHighPrecisionOnSampledPoints) {
    const auto pts = geometric_points(0.01, 50.0, 9);
    for (double s : pts) {
        for (double t : pts) {
            const double tol = 1e-13 * (1.0 + std::max(s, t) * std::max(s, t));
            EXPECT_NEAR(eval_kernel(KernelSpec::bifbm(1.7, 0.2), s, t), oracle::bifbm(1.7, 0.2, s, t), tol);
            EXPECT_NEAR(eval_kernel(KernelSpec::fbm(0.3), s, t), oracle::fbm(0.3, s, t), tol);
            EXPECT_NEAR(eval_kernel(KernelSpec::c_gamma(0.4), s, t), oracle::c_gamma(0.4, s, t), tol);
            EXPECT_NEAR(eval_kernel(KernelSpec::q_gamma(1.6), s, t), oracle::q_gamma(1.6, s, t), tol);
        }
    }
}

TEST(Kernels, GammaOneReducesToMin) {
    for (double s : {0.0, 0.3, 1.0, 7.5}) {
        for (double t : {0.0, 0.2, 1.0, 9.0}) {
            EXPECT_EQ(eval_kernel(KernelSpec::q_gamma(1.0), s, t), std::min(s, t));
            EXPECT_EQ(eval_kernel(KernelSpec::c_gamma(1.0), s, t), std::min(s, t));
        }
    }
}

TEST(Kernels, MinKernelAndCombinators) {
    EXPECT_EQ(eval_kernel(KernelSpec::min(), 2.0, 5.0), 2.0);
    const auto tc = KernelSpec::time_change(KernelSpec::min(), 2.0);
    EXPECT_DOUBLE_EQ(eval_kernel(tc, 3.0, 4.0), 9.0);
    const auto sc = KernelSpec::scale(KernelSpec::min(), 0.5);
    EXPECT_DOUBLE_EQ(eval_kernel(sc, 3.0, 4.0), 1.5);
    const auto sum = KernelSpec::sum(KernelSpec::min(), tc);
    EXPECT_DOUBLE_EQ(eval_kernel(sum, 3.0, 4.0), 12.0);
}

TEST(Kernels, LeiNualartRemainderClosedForm) {
    const double H = 2.0, K = 0.25, s = 1.0, t = 3.0;
    const double expected =
        0.5 * (std::pow(s, 2 * H * K) + std::pow(t, 2 * H * K) - std::pow(std::pow(t, 2 * H) + std::pow(s, 2 * H), K));
    EXPECT_NEAR(eval_kernel(KernelSpec::lei_nualart_remainder(H, K), s, t), expected, 1e-15);
}

TEST(Kernels, SymmetryIsBitExactForRandomSpecs) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> time(0.0, 50.0);
    for (int i = 0; i < 10000; ++i) {
        const auto spec = random_spec(rng);
        double s = time(rng);
        double t = time(rng);
        if (i % 17 == 0) s = 0.0;
        if (i % 23 == 0) t = s;
        const double a = eval_kernel(spec, s, t);
        const double b = eval_kernel(spec, t, s);
        ASSERT_EQ(std::memcmp(&a, &b, sizeof a), 0) << spec.describe() << " s=" << s << " t=" << t;
    }
}

TEST(Kernels, DiagonalLawHoldsToRelativeOneEMinus14) {
    for (const auto& [H, K] : kTheoremPairs) {
        const auto spec = KernelSpec::bifbm(H, K);
        for (double t : geometric_points(1e-3, 1e3, 40)) {
            const double expected = oracle::pow_ref(t, 2 * H * K);
            EXPECT_LE(std::abs(eval_kernel(spec, t, t) - expected), 1e-14 * expected) << H << " " << K << " " << t;
        }
        EXPECT_EQ(eval_kernel(spec, 0.0, 0.0), 0.0);
    }
}

TEST(Kernels, DecompositionIdentityInTheoremRegion) {
    const auto pts = geometric_points(0x1.0p-6, 0x1.0p6, 24);
    for (const auto& [H, K] : kTheoremPairs) {
        const auto bif = KernelSpec::bifbm(H, K);
        const auto c = KernelSpec::c_gamma(K);
        const auto q = KernelSpec::q_gamma(2 * H * K);
        const double w = std::exp2(-K);
        for (double s : pts) {
            for (double t : pts) {
                const double r = eval_kernel(bif, s, t);
                const double rhs = w * eval_kernel(c, std::pow(s, 2 * H), std::pow(t, 2 * H)) + w * eval_kernel(q, s, t);
                EXPECT_LE(std::abs(r - rhs), 1e-12 * (1 + std::abs(r)));
            }
        }
    }
}

TEST(Kernels, LeiNualartAndFbmSplitIdentities) {
    const auto pts = geometric_points(0x1.0p-6, 0x1.0p6, 24);
    for (const auto& [H, K] : kTheoremPairs) {
        const auto bif = KernelSpec::bifbm(H, K);
        const auto fbm = KernelSpec::fbm(H * K);
        const auto rem = KernelSpec::lei_nualart_remainder(H, K);
        for (double s : pts) {
            for (double t : pts) {
                const double f = eval_kernel(fbm, s, t);
                EXPECT_LE(std::abs(f - std::exp2(K - 1) * eval_kernel(bif, s, t) - eval_kernel(rem, s, t)),
                          1e-12 * (1 + std::abs(f)));
            }
        }
    }
    for (double H : {0.05, 0.2, 0.3, 0.45, 0.5}) {
        const auto fbm = KernelSpec::fbm(H);
        const auto q = KernelSpec::q_gamma(2 * H);
        for (double s : pts) {
            for (double t : pts) {
                const double half = 0.5 * (eval_kernel(q, s, t) + std::pow(std::min(s, t), 2 * H));
                EXPECT_LE(std::abs(eval_kernel(fbm, s, t) - half), 1e-12);
            }
        }
    }
}

TEST(Kernels, SelfSimilarityOfBifBm) {
    const auto pts = geometric_points(0.05, 20.0, 12);
    for (const auto& [H, K] : kTheoremPairs) {
        const auto spec = KernelSpec::bifbm(H, K);
        for (double a : {0.5, 2.0, 10.0}) {
            const double f = std::pow(a, 2 * H * K);
            for (double s : pts) {
                for (double t : pts) {
                    const double r = eval_kernel(spec, s, t);
                    EXPECT_LE(std::abs(eval_kernel(spec, a * s, a * t) - f * r), 1e-12 * f * (1 + std::abs(r)));
                }
            }
        }
    }
}

TEST(Kernels, IncrementVariance) {
    const auto bif = KernelSpec::bifbm(2.0, 0.25);
    EXPECT_EQ(increment_variance(bif, 1.5, 1.5), 0.0);
    const double expected = 1.0 + 2.0 - 2.0 * oracle::bifbm(2.0, 0.25, 1.0, 2.0);
    EXPECT_NEAR(expected, 1.26684, 1e-5);
    EXPECT_NEAR(increment_variance(bif, 1.0, 2.0), expected, 1e-14);
    for (double H : {0.2, 0.5, 0.9}) {
        EXPECT_NEAR(increment_variance(KernelSpec::fbm(H), 0.7, 2.9), std::pow(2.2, 2 * H), 1e-13);
    }
}

TEST(Kernels, ConstructionRejectsOutOfRangeParameters) {
    EXPECT_THROW((void)KernelSpec::bifbm(0.0, 0.5), ParameterError);
    EXPECT_THROW((void)KernelSpec::bifbm(1.0, -1.0), ParameterError);
    EXPECT_THROW((void)KernelSpec::fbm(1.2), ParameterError);
    EXPECT_THROW((void)KernelSpec::fbm(0.0), ParameterError);
    EXPECT_THROW((void)KernelSpec::c_gamma(0.0), ParameterError);
    EXPECT_THROW((void)KernelSpec::q_gamma(NAN), ParameterError);
    EXPECT_THROW((void)KernelSpec::lei_nualart_remainder(1.0, 1.5), ParameterError);
    EXPECT_THROW((void)KernelSpec::time_change(KernelSpec::min(), 0.0), ParameterError);
    EXPECT_THROW((void)KernelSpec::scale(KernelSpec::min(), -0.1), ParameterError);
    EXPECT_NO_THROW((void)KernelSpec::q_gamma(3.0));
    EXPECT_NO_THROW((void)KernelSpec::c_gamma(2.5));
    EXPECT_THROW((void)eval_kernel(KernelSpec::min(), -1.0, 1.0), ParameterError);
}

TEST(Kernels, DescribeIsStable) {
    const auto spec = KernelSpec::scale(KernelSpec::time_change(KernelSpec::c_gamma(0.25), 4.0), 0.5);
    EXPECT_EQ(spec.describe(), "scale(time_change(cgamma(0.25),4),0.5)");
}

TEST(ClassifyParams, DocumentedExamples) {
    EXPECT_EQ(classify_params(2.0, 0.25).region, ParamRegion::TheoremRegion);
    EXPECT_EQ(classify_params(0.5, 1.5).region, ParamRegion::OtherKnownRegion);
    EXPECT_EQ(classify_params(2.0, 0.6).region, ParamRegion::NecessaryViolated);
    EXPECT_EQ(classify_params(1.5, 0.5).region, ParamRegion::Unknown);
}

TEST(ClassifyParams, BoundariesAndPrecedence) {
    EXPECT_EQ(classify_params(1.5, 1.0 / 3.0).region, ParamRegion::TheoremRegion);
    EXPECT_EQ(classify_params(0.5, 1.0).region, ParamRegion::TheoremRegion);
    EXPECT_EQ(classify_params(1.0, 1.0).region, ParamRegion::OtherKnownRegion);
    EXPECT_EQ(classify_params(0.8, 1.25).region, ParamRegion::OtherKnownRegion);
    EXPECT_EQ(classify_params(0.8, 1.3).region, ParamRegion::NecessaryViolated);
    // H < 1/2 with 2 < K <= 1/H: outside every known region but not excluded.
    EXPECT_EQ(classify_params(0.25, 3.0).region, ParamRegion::Unknown);
    EXPECT_EQ(classify_params(0.25, 4.5).region, ParamRegion::NecessaryViolated);
    EXPECT_THROW((void)classify_params(0.0, 1.0), ParameterError);
    EXPECT_THROW((void)classify_params(1.0, -0.1), ParameterError);
}

TEST(ClassifyParams, ExactlyOneLabelOverALattice) {
    for (int i = 1; i <= 40; ++i) {
        for (int j = 1; j <= 40; ++j) {
            const double H = 0.1 * i;
            const double K = 0.1 * j;
            const auto region = classify_params(H, K).region;
            const bool theorem = K <= 1.0 && 2 * H * K <= 1.0 + 1e-12;
            if (theorem) {
                EXPECT_EQ(region, ParamRegion::TheoremRegion);
            } else if (K > 1.0 / H * (1 + 1e-12) && !(H <= 1.0 && K <= std::min(2.0, 1.0 / H) * (1 + 1e-12))) {
                EXPECT_EQ(region, ParamRegion::NecessaryViolated) << H << " " << K;
            }
        }
    }
}

TEST(CGammaConst, MatchesGammaFunctionOracle) {
    EXPECT_NEAR(c_gamma_const(0.5), oracle::c_gamma_const(0.5), 1e-15);
    EXPECT_NEAR(c_gamma_const(0.5), 1.0 / (2.0 * std::sqrt(M_PI)), 1e-15);
    EXPECT_NEAR(c_gamma_const(0.5), 0.2820948, 1e-7);
    EXPECT_NEAR(c_gamma_const(0.9), oracle::c_gamma_const(0.9), 1e-14);
    EXPECT_NEAR(c_gamma_const(0.9), 0.0946023, 1e-7);
    for (double g : {0.01, 0.1, 0.3, 0.7, 0.99}) {
        EXPECT_GT(c_gamma_const(g), 0.0);
        EXPECT_NEAR(c_gamma_const(g), oracle::c_gamma_const(g), 1e-13 * oracle::c_gamma_const(g));
    }
}

TEST(CGammaConst, RejectsGammaOutsideOpenUnitInterval) {
    EXPECT_THROW((void)c_gamma_const(1.0), ParameterError);
    EXPECT_THROW((void)c_gamma_const(0.0), ParameterError);
    EXPECT_THROW((void)c_gamma_const(1.5), ParameterError);
}
