#include "bifbm/sampler.hpp"

#include <cmath>
#include <vector>

#include "bifbm/error.hpp"
#include "bifbm/gram.hpp"
#include "bifbm/parallel.hpp"

namespace bifbm {

namespace {

void require_paths(std::size_t n_paths) {
    if (n_paths == 0) throw ParameterError("sampler: n_paths must be positive");
}

// Samples of the process with kernel `spec` at the positive grid times,
// written into the trailing columns of `out` (the time-0 column stays 0).
double fill_gaussian(const KernelSpec& spec, const TimeGrid& grid, const SeedSpec& seed,
                     unsigned threads, RowMatrix& out) {
    const std::size_t offset = grid.starts_at_zero() ? 1 : 0;
    const std::size_t m = grid.size() - offset;
    if (m == 0) return 0.0;

    std::vector<double> positive(grid.times().begin() + static_cast<std::ptrdiff_t>(offset),
                                 grid.times().end());
    const auto gram = build_gram(spec, TimeGrid(std::move(positive)), threads);
    const auto chol = cholesky_psd(gram);
    const Eigen::MatrixXd& L = chol.lower;

    parallel_for(static_cast<std::size_t>(out.rows()), threads, [&](std::size_t p) {
        NormalStream normals(seed, p);
        Eigen::VectorXd z(static_cast<Eigen::Index>(m));
        for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normals.next();
        const auto row = static_cast<Eigen::Index>(p);
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            double acc = 0.0;
            for (Eigen::Index k = 0; k <= i; ++k) acc += L(i, k) * z(k);
            out(row, static_cast<Eigen::Index>(offset) + i) = acc;
        }
    });
    return chol.applied_jitter;
}

// Brownian motion observed at the nondecreasing times `clock`.
void fill_brownian(std::span<const double> clock, const SeedSpec& seed, unsigned threads,
                   RowMatrix& out) {
    parallel_for(static_cast<std::size_t>(out.rows()), threads, [&](std::size_t p) {
        NormalStream normals(seed, p);
        const auto row = static_cast<Eigen::Index>(p);
        double position = 0.0;
        double previous = 0.0;
        for (std::size_t i = 0; i < clock.size(); ++i) {
            const double dt = std::max(clock[i] - previous, 0.0);
            if (dt > 0.0) position += std::sqrt(dt) * normals.next();
            out(row, static_cast<Eigen::Index>(i)) = position;
            previous = clock[i];
        }
    });
}

SeedSpec tagged(const SeedSpec& seed, std::uint32_t tag) {
    return SeedSpec{seed.master_seed, seed.stream ^ tag};
}

}  // namespace

SamplePaths sample_gaussian(const KernelSpec& spec, const TimeGrid& grid, std::size_t n_paths,
                            const SeedSpec& seed, unsigned threads) {
    require_paths(n_paths);
    RowMatrix values = RowMatrix::Zero(static_cast<Eigen::Index>(n_paths),
                                       static_cast<Eigen::Index>(grid.size()));
    const double jitter = fill_gaussian(spec, grid, seed, threads, values);
    return SamplePaths{std::move(values), grid, spec, "direct", seed, jitter};
}

SamplePaths sample_brownian(const TimeGrid& grid, std::size_t n_paths, const SeedSpec& seed,
                            unsigned threads) {
    require_paths(n_paths);
    RowMatrix values(static_cast<Eigen::Index>(n_paths), static_cast<Eigen::Index>(grid.size()));
    fill_brownian(grid.times(), seed, threads, values);
    return SamplePaths{std::move(values), grid, KernelSpec::min(), "brownian", seed, 0.0};
}

std::pair<KernelSpec, KernelSpec> bifbm_sum_components(double H, double K) {
    if (!in_theorem_region(H, K))
        throw ParameterError("bifbm sum decomposition requires 0 < K <= 1 and 2HK <= 1");
    const double weight = std::exp2(-K);
    auto c_part = KernelSpec::scale(KernelSpec::time_change(KernelSpec::c_gamma(K), 2.0 * H), weight);
    auto q_part = KernelSpec::scale(KernelSpec::q_gamma(2.0 * H * K), weight);
    return {std::move(c_part), std::move(q_part)};
}

SamplePaths sample_bifbm_sum(double H, double K, const TimeGrid& grid, std::size_t n_paths,
                             const SeedSpec& seed, unsigned threads) {
    require_paths(n_paths);
    const auto [c_part, q_part] = bifbm_sum_components(H, K);
    const auto rows = static_cast<Eigen::Index>(n_paths);
    const auto cols = static_cast<Eigen::Index>(grid.size());
    RowMatrix first = RowMatrix::Zero(rows, cols);
    RowMatrix second = RowMatrix::Zero(rows, cols);
    const double j1 = fill_gaussian(c_part, grid, tagged(seed, kFirstComponentTag), threads, first);
    const double j2 = fill_gaussian(q_part, grid, tagged(seed, kSecondComponentTag), threads, second);
    first += second;
    return SamplePaths{std::move(first), grid, KernelSpec::bifbm(H, K), "bifbm-sum", seed,
                       std::max(j1, j2)};
}

SamplePaths sample_fbm_decomposed(double H, const TimeGrid& grid, std::size_t n_paths,
                                  const SeedSpec& seed, unsigned threads) {
    if (!(std::isfinite(H) && H > 0.0 && H <= 0.5))
        throw ParameterError("fbm decomposition requires 0 < H <= 1/2 (Q_{2H} is not PSD otherwise)");
    require_paths(n_paths);
    const auto rows = static_cast<Eigen::Index>(n_paths);
    const auto cols = static_cast<Eigen::Index>(grid.size());

    RowMatrix zeta = RowMatrix::Zero(rows, cols);
    const double jitter =
        fill_gaussian(KernelSpec::q_gamma(2.0 * H), grid, tagged(seed, kFirstComponentTag), threads, zeta);

    std::vector<double> clock(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) clock[i] = power0(grid[i], 2.0 * H);
    RowMatrix beta(rows, cols);
    fill_brownian(clock, tagged(seed, kSecondComponentTag), threads, beta);

    zeta = (zeta + beta) * (1.0 / std::sqrt(2.0));
    return SamplePaths{std::move(zeta), grid, KernelSpec::fbm(H), "fbm-decomposed", seed, jitter};
}

CovarianceEstimate empirical_covariance(const RowMatrix& values, unsigned threads) {
    const auto n = values.rows();
    if (n < 2) throw ParameterError("empirical_covariance: at least two paths are required");
    const auto m = values.cols();
    Eigen::MatrixXd cov(m, m);
    Eigen::MatrixXd se(m, m);
    const double inv_n = 1.0 / static_cast<double>(n);

    parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t row) {
        const auto i = static_cast<Eigen::Index>(row);
        for (Eigen::Index j = i; j < m; ++j) {
            double sum = 0.0;
            for (Eigen::Index p = 0; p < n; ++p) sum += values(p, i) * values(p, j);
            const double mean = sum * inv_n;
            double sq = 0.0;
            for (Eigen::Index p = 0; p < n; ++p) {
                const double d = values(p, i) * values(p, j) - mean;
                sq += d * d;
            }
            cov(i, j) = mean;
            se(i, j) = std::sqrt(sq / static_cast<double>(n - 1) * inv_n);
        }
    });
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            cov(i, j) = cov(j, i);
            se(i, j) = se(j, i);
        }
    }
    return {std::move(cov), std::move(se)};
}

CovarianceEstimate empirical_covariance(const SamplePaths& paths, unsigned threads) {
    return empirical_covariance(paths.values, threads);
}

}  // namespace bifbm
