#include "bifbm/gram.hpp"

#include <cmath>

#include "bifbm/error.hpp"
#include "bifbm/format.hpp"
#include "bifbm/parallel.hpp"

namespace bifbm {

namespace {

double max_diagonal(const Eigen::MatrixXd& m) {
    return m.rows() == 0 ? 0.0 : m.diagonal().maxCoeff();
}

}  // namespace

double GramMatrix::scale() const { return max_diagonal(values); }

const char* to_string(PsdVerdict v) noexcept { return v == PsdVerdict::PSD ? "PSD" : "NotPSD"; }

GramMatrix build_gram(const KernelSpec& spec, const TimeGrid& grid, unsigned threads) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd g(n, n);
    parallel_for(grid.size(), threads, [&](std::size_t row) {
        const auto i = static_cast<Eigen::Index>(row);
        for (Eigen::Index j = i; j < n; ++j) {
            g(i, j) = eval_kernel(spec, grid[row], grid[static_cast<std::size_t>(j)]);
        }
    });
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < i; ++j) g(i, j) = g(j, i);
    return GramMatrix{std::move(g), spec, grid};
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
    if (symmetric.rows() != symmetric.cols() || symmetric.rows() == 0)
        throw NumericError("min_eigenvalue: expected a nonempty square matrix");
    if (!symmetric.allFinite()) throw NumericError("min_eigenvalue: non-finite matrix entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("min_eigenvalue: eigensolver failed");
    return solver.eigenvalues()(0);
}

double min_eigenvalue(const GramMatrix& gram) { return min_eigenvalue(gram.values); }

PsdReport psd_check(const Eigen::MatrixXd& symmetric, double rel_tol) {
    if (!(rel_tol >= 0.0)) throw ParameterError("psd_check: rel_tol must be nonnegative");
    const double lambda = min_eigenvalue(symmetric);
    const double scale = max_diagonal(symmetric);
    const bool ok = lambda >= -rel_tol * std::max(scale, 1.0);
    return PsdReport{lambda, scale, rel_tol, ok ? PsdVerdict::PSD : PsdVerdict::NotPSD};
}

PsdReport psd_check(const GramMatrix& gram, double rel_tol) {
    return psd_check(gram.values, rel_tol);
}

std::vector<double> default_jitter_schedule() { return {0.0, 1e-14, 1e-12, 1e-10}; }

CholeskyResult cholesky_psd(const Eigen::MatrixXd& symmetric, std::span<const double> rel_schedule) {
    if (rel_schedule.empty() || rel_schedule.front() != 0.0)
        throw ParameterError("cholesky_psd: jitter schedule must start at 0");
    for (std::size_t k = 1; k < rel_schedule.size(); ++k) {
        if (!(rel_schedule[k] > rel_schedule[k - 1]))
            throw ParameterError("cholesky_psd: jitter schedule must be increasing");
    }
    if (!symmetric.allFinite()) throw NumericError("cholesky_psd: non-finite matrix entries");

    const double scale = max_diagonal(symmetric);
    const double unit = scale > 0.0 ? scale : 1.0;
    const auto n = symmetric.rows();
    for (double rel : rel_schedule) {
        const double eps = rel * unit;
        Eigen::MatrixXd shifted = symmetric;
        shifted.diagonal().array() += eps;
        Eigen::LLT<Eigen::MatrixXd> llt(shifted);
        if (llt.info() == Eigen::Success) {
            Eigen::MatrixXd lower = llt.matrixL();
            if (lower.allFinite()) return CholeskyResult{std::move(lower), eps};
        }
    }
    const double lambda = min_eigenvalue(symmetric);
    throw NotPsdError("cholesky_psd: matrix of size " + std::to_string(n) +
                          " is not PSD within the jitter schedule (min eigenvalue " +
                          format_real(lambda) + ")",
                      lambda);
}

CholeskyResult cholesky_psd(const Eigen::MatrixXd& symmetric) {
    const auto schedule = default_jitter_schedule();
    return cholesky_psd(symmetric, schedule);
}

CholeskyResult cholesky_psd(const GramMatrix& gram) { return cholesky_psd(gram.values); }

}  // namespace bifbm
