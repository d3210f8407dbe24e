#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>

#include "bifbm/grid.hpp"
#include "bifbm/kernels.hpp"
#include "bifbm/rng.hpp"

namespace bifbm {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n_paths x n_times realizations of a centered Gaussian process.
struct SamplePaths {
    RowMatrix values;
    TimeGrid grid;
    /// Covariance kernel of the law being sampled.
    KernelSpec spec;
    /// "direct", "bifbm-sum", "fbm-decomposed" or "brownian".
    std::string method;
    SeedSpec seed;
    /// Largest diagonal jitter applied by any Cholesky factorization involved.
    double applied_jitter = 0.0;

    [[nodiscard]] std::size_t n_paths() const noexcept {
        return static_cast<std::size_t>(values.rows());
    }
};

/// Exact sampling: each path is L z with L the (jittered) Cholesky factor of
/// the Gram matrix on the positive grid times. A time-0 column is exactly 0.
[[nodiscard]] SamplePaths sample_gaussian(const KernelSpec& spec, const TimeGrid& grid,
                                          std::size_t n_paths, const SeedSpec& seed,
                                          unsigned threads = 1);

/// Standard Brownian motion through independent increments; no matrix factorization.
[[nodiscard]] SamplePaths sample_brownian(const TimeGrid& grid, std::size_t n_paths,
                                          const SeedSpec& seed, unsigned threads = 1);

/// The two summand kernels of the bifBm covariance:
/// 2^{-K} C_K(s^{2H}, t^{2H}) and 2^{-K} Q_{2HK}(s,t).
[[nodiscard]] std::pair<KernelSpec, KernelSpec> bifbm_sum_components(double H, double K);

/// Sum of independent Gaussian processes with the two component kernels above.
/// Requires 0 < K <= 1 and 2HK <= 1.
[[nodiscard]] SamplePaths sample_bifbm_sum(double H, double K, const TimeGrid& grid,
                                           std::size_t n_paths, const SeedSpec& seed,
                                           unsigned threads = 1);

/// (zeta(t) + beta(t^{2H})) / sqrt(2) with zeta ~ Q_{2H} and beta an independent
/// Brownian motion. Requires 0 < H <= 1/2.
[[nodiscard]] SamplePaths sample_fbm_decomposed(double H, const TimeGrid& grid,
                                                std::size_t n_paths, const SeedSpec& seed,
                                                unsigned threads = 1);

struct CovarianceEstimate {
    /// mean over paths of x_i x_j (the process is centered; no mean subtraction).
    Eigen::MatrixXd covariance;
    /// sample standard deviation of x_i x_j divided by sqrt(n_paths).
    Eigen::MatrixXd standard_error;
};

[[nodiscard]] CovarianceEstimate empirical_covariance(const SamplePaths& paths,
                                                      unsigned threads = 1);
[[nodiscard]] CovarianceEstimate empirical_covariance(const RowMatrix& values,
                                                      unsigned threads = 1);

/// Stream tags XOR-ed into SeedSpec::stream for the two independent components
/// of the decomposition samplers.
inline constexpr std::uint32_t kFirstComponentTag = 0x40000000u;
inline constexpr std::uint32_t kSecondComponentTag = 0x80000000u;

}  // namespace bifbm
