#include "bifbm/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "bifbm/error.hpp"
#include "bifbm/kernels.hpp"

namespace bifbm {

namespace {

void require_theorem_region(double H, double K, const char* who) {
    if (!in_theorem_region(H, K))
        throw ParameterError(std::string(who) + ": requires 0 < K <= 1 and 2HK <= 1");
}

// Beyond this exponent e^{2H|u|} is evaluated in log space.
constexpr double kDirectExponentLimit = 200.0;

}  // namespace

DeviationReport self_similarity_deviation(double H, double K, double a, const TimeGrid& grid,
                                          double tolerance) {
    if (!(std::isfinite(a) && a > 0.0)) throw ParameterError("self_similarity: a must be positive");
    const auto spec = KernelSpec::bifbm(H, K);
    const double factor = std::pow(a, 2.0 * H * K);
    DeviationReport report;
    report.tolerance = tolerance;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i; j < grid.size(); ++j) {
            const double s = grid[i];
            const double t = grid[j];
            const double base = eval_kernel(spec, s, t);
            const double scaled = eval_kernel(spec, a * s, a * t);
            const double dev = std::abs(scaled - factor * base) / (factor * (1.0 + std::abs(base)));
            if (dev > report.max_abs_deviation) {
                report.max_abs_deviation = dev;
                report.arg_first = s;
                report.arg_second = t;
            }
        }
    }
    report.pass = report.max_abs_deviation <= tolerance;
    return report;
}

double lamperti_cov(double H, double K, double u, double v) {
    const auto spec = KernelSpec::bifbm(H, K);
    const double hk = H * K;
    if (2.0 * H * std::max(std::abs(u), std::abs(v)) <= kDirectExponentLimit)
        return std::exp(-hk * (u + v)) * eval_kernel(spec, std::exp(u), std::exp(v));

    // With d = |u - v|:
    // 2^{-K} e^{HKd} [(1 + e^{-2Hd})^K - (1 - e^{-d})^{2HK}]
    const double d = std::abs(u - v);
    if (d == 0.0) return 1.0;
    const double first = std::expm1(K * std::log1p(std::exp(-2.0 * H * d)));
    const double second = std::expm1(2.0 * hk * std::log1p(-std::exp(-d)));
    const double bracket = first - second;
    if (bracket <= 0.0) return std::exp2(-K) * std::exp(hk * d) * bracket;
    return std::exp(-K * std::log(2.0) + hk * d + std::log(bracket));
}

DeviationReport lamperti_stationarity(double H, double K, std::span<const double> lags,
                                      std::span<const double> bases, double tolerance) {
    if (lags.empty() || bases.empty())
        throw ParameterError("lamperti_stationarity: lags and base points must be nonempty");
    DeviationReport report;
    report.tolerance = tolerance;
    for (double lag : lags) {
        const double reference = lamperti_cov(H, K, lag, 0.0);
        for (double u : bases) {
            const double dev = std::abs(lamperti_cov(H, K, u + lag, u) - reference);
            if (dev > report.max_abs_deviation) {
                report.max_abs_deviation = dev;
                report.arg_first = lag;
                report.arg_second = u;
            }
        }
    }
    report.pass = report.max_abs_deviation <= tolerance;
    return report;
}

QuasihelixReport quasihelix_report(double H, double K, const TimeGrid& grid) {
    require_theorem_region(H, K, "quasihelix_report");
    if (grid.size() < 2) throw ParameterError("quasihelix_report: need at least two grid points");
    const auto spec = KernelSpec::bifbm(H, K);
    const double exponent = 2.0 * H * K;

    QuasihelixReport report;
    report.lower_bound = std::exp2(-K);
    report.upper_bound = std::exp2(1.0 - K);
    report.min_ratio = INFINITY;
    report.max_ratio = -INFINITY;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            const double ratio = increment_variance(spec, grid[i], grid[j]) /
                                 std::pow(grid[j] - grid[i], exponent);
            report.min_ratio = std::min(report.min_ratio, ratio);
            report.max_ratio = std::max(report.max_ratio, ratio);
            ++report.pairs;
        }
    }
    constexpr double slack = 1e-12;
    report.pass = report.min_ratio >= report.lower_bound - slack &&
                  report.max_ratio <= report.upper_bound + slack;
    return report;
}

double increment_limit_error(double H, double K, double T, const TimeGrid& grid) {
    require_theorem_region(H, K, "increment_limit_error");
    if (!(std::isfinite(T) && T > 0.0)) throw ParameterError("increment_limit_error: T must be positive");
    const auto bif = KernelSpec::bifbm(H, K);
    const auto fbm = KernelSpec::fbm(H * K);
    const double weight = std::exp2(K - 1.0);
    const double r_tt = eval_kernel(bif, T, T);

    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i; j < grid.size(); ++j) {
            const double s = grid[i];
            const double t = grid[j];
            const double increment_cov = eval_kernel(bif, T + t, T + s) - eval_kernel(bif, T + t, T) -
                                         eval_kernel(bif, T, T + s) + r_tt;
            worst = std::max(worst, std::abs(weight * increment_cov - eval_kernel(fbm, s, t)));
        }
    }
    return worst;
}

std::vector<double> p_variation(std::span<const double> path, const TimeGrid& grid, double p,
                                int levels) {
    if (!(p > 0.0)) throw ParameterError("p_variation: p must be positive");
    if (levels < 0 || levels > 40) throw ParameterError("p_variation: levels must lie in [0, 40]");
    const std::size_t intervals = std::size_t{1} << levels;
    if (grid.size() != intervals + 1)
        throw ParameterError("p_variation: grid must have 2^levels + 1 points");
    if (path.size() != grid.size()) throw ParameterError("p_variation: path and grid sizes differ");
    if (!grid.is_uniform()) throw ParameterError("p_variation: grid must be uniform");

    std::vector<double> sums;
    sums.reserve(static_cast<std::size_t>(levels) + 1);
    for (int level = 0; level <= levels; ++level) {
        const std::size_t stride = intervals >> level;
        double sum = 0.0;
        for (std::size_t i = stride; i < path.size(); i += stride)
            sum += std::pow(std::abs(path[i] - path[i - stride]), p);
        sums.push_back(sum);
    }
    return sums;
}

double variogram_exponent(const RowMatrix& paths, const TimeGrid& grid, std::size_t max_lag) {
    if (!grid.is_uniform() || grid.size() < 3)
        throw ParameterError("variogram_exponent: needs a uniform grid with at least 3 points");
    if (static_cast<std::size_t>(paths.cols()) != grid.size())
        throw ParameterError("variogram_exponent: paths and grid sizes differ");
    if (max_lag < 2 || max_lag >= grid.size())
        throw ParameterError("variogram_exponent: max_lag must lie in [2, grid size)");
    const double step = grid[1] - grid[0];

    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t lag = 1; lag <= max_lag; lag *= 2) {
        double sum = 0.0;
        std::size_t count = 0;
        for (Eigen::Index p = 0; p < paths.rows(); ++p) {
            for (std::size_t i = lag; i < grid.size(); ++i) {
                const double d = paths(p, static_cast<Eigen::Index>(i)) -
                                 paths(p, static_cast<Eigen::Index>(i - lag));
                sum += d * d;
                ++count;
            }
        }
        xs.push_back(std::log(step * static_cast<double>(lag)));
        ys.push_back(std::log(sum / static_cast<double>(count)));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    return 0.5 * sxy / sxx;
}

double f_counterexample(double gamma, double a) {
    if (!(gamma > 0.0) || !(a >= 0.0))
        throw ParameterError("f_counterexample: requires gamma > 0 and a >= 0");
    return 2.0 * power0(a, gamma) - std::expm1(gamma * std::log1p(a));
}

constexpr double kWitnessMargin = 1e-12;

double find_negative_a(double gamma) {
    if (!(std::isfinite(gamma) && gamma > 1.0))
        throw ParameterError("find_negative_a: gamma must exceed 1");
    for (int k = 1; k <= 1022; ++k) {
        const double a = std::ldexp(1.0, -k);
        if (f_counterexample(gamma, a) < -kWitnessMargin * 2.0 * std::pow(a, gamma)) return a;
    }
    throw NumericError("find_negative_a: no negative value found down to a = 2^-1022");
}

}  // namespace bifbm
