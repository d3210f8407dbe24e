#pragma once

// Numerical exploration of the (H,K) plane: Gram-matrix PSD verdicts on a
// lattice, bracketing of the critical K for fixed H, and the 2HK trend as H
// grows. Every estimate is tied to the finite grid it was computed on: a
// NotPSD verdict is a certificate, a PSD verdict is only evidence.

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bifbm/gram.hpp"
#include "bifbm/grid.hpp"

namespace bifbm {

struct Interval {
    double lo;
    double hi;
};

enum class CellVerdict { PSD, NotPSD, Error };

[[nodiscard]] const char* to_string(CellVerdict v) noexcept;

struct RegionScan {
    std::vector<double> H_values;
    std::vector<double> K_values;
    TimeGrid grid;
    double rel_tol;
    /// rows index H, columns index K; NaN where the cell failed.
    Eigen::MatrixXd min_eigs;
    std::vector<CellVerdict> verdicts;  ///< row-major, H-major like min_eigs

    [[nodiscard]] CellVerdict verdict(std::size_t h, std::size_t k) const {
        return verdicts[h * K_values.size() + k];
    }
};

/// 24 geometric points spanning [2^-6, 2^6] plus t = 1000.
[[nodiscard]] TimeGrid default_exploration_grid();

/// PSD verdict of the bifBm Gram on `grid` at every lattice point
/// (inclusive endpoints, `steps` points per axis). Failing cells are marked
/// Error and the scan continues.
[[nodiscard]] RegionScan scan_region(Interval H_range, Interval K_range,
                                     std::pair<std::size_t, std::size_t> steps,
                                     const TimeGrid& grid, double rel_tol = kDefaultPsdRelTol,
                                     unsigned threads = 1);

enum class CriticalKStatus {
    Bracketed,     ///< single PSD -> NotPSD transition, bisected to resolution
    NoTransition,  ///< PSD up to 1/H + 0.1 on this grid
    NotPsdAtStart, ///< already NotPSD at K = 1/(2H)
    NonMonotone,   ///< several transitions; `transitions` lists all, no bisection
};

[[nodiscard]] const char* to_string(CriticalKStatus s) noexcept;

struct CriticalKEstimate {
    double H;
    /// Largest K known PSD below the transition (NaN if none).
    double K_low;
    /// Smallest K found NotPSD (NaN if none).
    double K_high;
    TimeGrid grid;
    int bisection_iterations;
    double resolution;
    CriticalKStatus status;
    /// Coarse brackets (K before, K after) around each verdict change.
    std::vector<std::pair<double, double>> transitions;

    [[nodiscard]] double K_mid() const noexcept { return 0.5 * (K_low + K_high); }
};

inline constexpr double kCoarseKStep = 0.02;

/// Coarse scan K = 1/(2H) + 0.02 i up to 1/H + 0.1, then bisection on the
/// dyadic sub-lattice of the transition cell until the bracket <= resolution.
[[nodiscard]] CriticalKEstimate critical_k(double H, const TimeGrid& grid, double resolution,
                                           double rel_tol = kDefaultPsdRelTol,
                                           unsigned threads = 1);

struct TrendPoint {
    double H;
    /// 2H times the bracket midpoint (NaN when no bracket exists).
    double two_hk_mid;
    CriticalKEstimate estimate;
};

/// critical_k along an increasing list of H > 1. Observational output only.
[[nodiscard]] std::vector<TrendPoint> hk_trend(std::span<const double> H_list, const TimeGrid& grid,
                                               double resolution,
                                               double rel_tol = kDefaultPsdRelTol,
                                               unsigned threads = 1);

}  // namespace bifbm
