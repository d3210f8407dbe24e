#pragma once

#include <cstddef>
#include <functional>

namespace bifbm {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_subdivisions = 2000;
    /// Where the improper integrals over (0, inf) are split into head and tail.
    double split_point = 1.0;
    /// Multiplies the automatically chosen tail cutoff; values > 1 only add work.
    double cutoff_multiplier = 1.0;

    /// Throws ParameterError if tolerances are not positive or max_subdivisions < 16.
    void validate() const;
};

struct QuadratureResult {
    double value;
    double error_estimate;
    std::size_t subdivisions;
};

/// Globally adaptive 15-point Gauss-Kronrod on [a, b]: the interval with the
/// largest error estimate is bisected until the summed estimate is below
/// max(abs_tol, rel_tol * |value|). Never evaluates f at the endpoints.
/// Throws ConvergenceError when max_subdivisions is exhausted.
[[nodiscard]] QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                                  double a, double b,
                                                  const QuadratureConfig& cfg);

}  // namespace bifbm
