#pragma once

// Structural checks on the bifractional covariance: self-similarity,
// stationarity of the Lamperti transform, increment-variance (quasihelix)
// bounds, the small-increment limit towards fBm, variation sums of sampled
// paths, and the counterexample showing Q_gamma fails to be PSD for gamma > 1.

#include <cstddef>
#include <span>
#include <vector>

#include "bifbm/grid.hpp"
#include "bifbm/sampler.hpp"

namespace bifbm {

struct DeviationReport {
    double max_abs_deviation = 0.0;
    /// Arguments at which the maximum was attained (a pair of times, or lag and base point).
    double arg_first = 0.0;
    double arg_second = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

/// max over grid pairs of |R(as, at) - a^{2HK} R(s,t)| / (a^{2HK} (1 + |R(s,t)|)).
[[nodiscard]] DeviationReport self_similarity_deviation(double H, double K, double a,
                                                        const TimeGrid& grid,
                                                        double tolerance = 1e-12);

/// Covariance of the Lamperti transform zeta(u) = e^{-HKu} xi(e^u):
/// e^{-HK(u+v)} R(e^u, e^v). Switches to a log-space form for large |u|, |v|.
[[nodiscard]] double lamperti_cov(double H, double K, double u, double v);

/// max over lags l and base points u of |lamperti_cov(u+l, u) - lamperti_cov(l, 0)|.
[[nodiscard]] DeviationReport lamperti_stationarity(double H, double K, std::span<const double> lags,
                                                    std::span<const double> bases,
                                                    double tolerance = 1e-10);

struct QuasihelixReport {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double lower_bound = 0.0;  ///< 2^{-K}
    double upper_bound = 0.0;  ///< 2^{1-K}
    std::size_t pairs = 0;
    bool pass = false;
};

/// Ratios E|xi(t)-xi(s)|^2 / |t-s|^{2HK} over all distinct grid pairs, checked
/// against [2^{-K} - 1e-12, 2^{1-K} + 1e-12]. Requires (H,K) in the theorem region.
[[nodiscard]] QuasihelixReport quasihelix_report(double H, double K, const TimeGrid& grid);

/// sup over grid pairs of
/// |2^{K-1} [R(T+t,T+s) - R(T+t,T) - R(T,T+s) + R(T,T)] - S_{HK}(s,t)|.
[[nodiscard]] double increment_limit_error(double H, double K, double T, const TimeGrid& grid);

/// Sums of |increment|^p over dyadic sub-partitions of a uniform grid with
/// 2^levels + 1 points; entry l uses 2^l intervals.
[[nodiscard]] std::vector<double> p_variation(std::span<const double> path, const TimeGrid& grid,
                                              double p, int levels);

/// Slope / 2 of log mean squared increment against log lag over dyadic lags
/// 1, 2, 4, ... <= max_lag steps, pooled over all paths. A rough Hoelder-index proxy.
[[nodiscard]] double variogram_exponent(const RowMatrix& paths, const TimeGrid& grid,
                                        std::size_t max_lag);

/// 1 + 2 a^gamma - (1 + a)^gamma = Q(1,1) + Q(1+a,1+a) - 2 Q(1,1+a).
[[nodiscard]] double f_counterexample(double gamma, double a);

/// First a = 2^{-k}, k = 1..1022, with f_counterexample(gamma, a) < -1e-12 * 2a^gamma.
/// f is evaluated as 2a^gamma - expm1(gamma log1p(a)), so tiny a keeps its sign.
/// Requires gamma > 1; throws NumericError if the scan finds nothing.
[[nodiscard]] double find_negative_a(double gamma);

}  // namespace bifbm
