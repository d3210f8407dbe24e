#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "bifbm/grid.hpp"
#include "bifbm/kernels.hpp"

namespace bifbm {

/// Pairwise kernel values on a grid, exactly symmetric.
struct GramMatrix {
    Eigen::MatrixXd values;
    KernelSpec spec;
    TimeGrid grid;

    /// Largest diagonal entry (the process variance scale).
    [[nodiscard]] double scale() const;
};

enum class PsdVerdict { PSD, NotPSD };

[[nodiscard]] const char* to_string(PsdVerdict v) noexcept;

struct PsdReport {
    double min_eigenvalue;
    double scale;
    double rel_tol;
    PsdVerdict verdict;
};

inline constexpr double kDefaultPsdRelTol = 1e-10;

/// Upper triangle evaluated, lower mirrored. Rows may be filled in parallel.
[[nodiscard]] GramMatrix build_gram(const KernelSpec& spec, const TimeGrid& grid,
                                    unsigned threads = 1);

/// Smallest eigenvalue of a symmetric matrix (self-adjoint QR eigensolver).
/// Throws NumericError on non-finite input.
[[nodiscard]] double min_eigenvalue(const Eigen::MatrixXd& symmetric);
[[nodiscard]] double min_eigenvalue(const GramMatrix& gram);

/// PSD iff min_eigenvalue >= -rel_tol * max(scale, 1).
[[nodiscard]] PsdReport psd_check(const Eigen::MatrixXd& symmetric,
                                  double rel_tol = kDefaultPsdRelTol);
[[nodiscard]] PsdReport psd_check(const GramMatrix& gram, double rel_tol = kDefaultPsdRelTol);

struct CholeskyResult {
    Eigen::MatrixXd lower;
    double applied_jitter;
};

/// Relative jitter levels {0, 1e-14, 1e-12, 1e-10}; multiplied by the matrix scale.
[[nodiscard]] std::vector<double> default_jitter_schedule();

/// Factorizes G + eps*I with eps = rel_schedule[k] * scale for the first k
/// that succeeds. `rel_schedule` must start at 0 and be increasing. Throws
/// NotPsdError (with the minimum eigenvalue) if every level fails.
[[nodiscard]] CholeskyResult cholesky_psd(const Eigen::MatrixXd& symmetric,
                                          std::span<const double> rel_schedule);
[[nodiscard]] CholeskyResult cholesky_psd(const Eigen::MatrixXd& symmetric);
[[nodiscard]] CholeskyResult cholesky_psd(const GramMatrix& gram);

}  // namespace bifbm
