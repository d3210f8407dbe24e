#pragma once

// Quadrature reconstructions of x^gamma, C_gamma and Q_gamma from their
// integral representations. They share no code path with the closed forms in
// kernels.hpp beyond the normalizing constant gamma / Gamma(1 - gamma).

#include <string>

#include "bifbm/grid.hpp"
#include "bifbm/quadrature.hpp"

namespace bifbm {

/// c_gamma * int_0^inf (1 - e^{-xy}) / y^{1+gamma} dy, approximately x^gamma.
[[nodiscard]] double power_integral(double gamma, double x, const QuadratureConfig& q = {});

/// gamma * int_0^{min(s,t)} (max(s,t) + u)^{gamma-1} du, approximately C_gamma(s,t).
[[nodiscard]] double c_gamma_integral(double gamma, double s, double t,
                                      const QuadratureConfig& q = {});

/// c_gamma * int_0^inf e^{-|t-s|y} (1 - e^{-min(s,t)y}) / y^{1+gamma} dy,
/// approximately Q_gamma(s,t).
[[nodiscard]] double q_gamma_integral(double gamma, double s, double t,
                                      const QuadratureConfig& q = {});

struct OracleReport {
    double gamma = 0.0;
    double max_abs_error = 0.0;
    /// Relative to |closed form|, over comparisons whose closed form is nonzero.
    double max_rel_error = 0.0;
    /// max over comparisons of |error| / max(check_abs_tol, check_rel_tol * |closed form|).
    double max_tolerance_ratio = 0.0;
    double worst_s = 0.0;
    double worst_t = 0.0;
    std::string worst_kernel;
    std::size_t comparisons = 0;
    double check_abs_tol = 1e-6;
    double check_rel_tol = 1e-6;

    [[nodiscard]] bool pass() const noexcept { return max_tolerance_ratio <= 1.0; }
};

/// Compares the closed forms of C_gamma, Q_gamma (all grid pairs) and x^gamma
/// (grid points) with their quadrature reconstructions. Convergence failures
/// are rethrown with the offending pair in the message.
[[nodiscard]] OracleReport oracle_report(double gamma, const TimeGrid& grid,
                                         const QuadratureConfig& q = {},
                                         double check_abs_tol = 1e-6,
                                         double check_rel_tol = 1e-6);

}  // namespace bifbm
