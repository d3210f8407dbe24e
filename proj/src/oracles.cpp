#include "bifbm/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "bifbm/error.hpp"
#include "bifbm/format.hpp"
#include "bifbm/kernels.hpp"

namespace bifbm {

namespace {

void require_open_unit(double gamma, const char* who) {
    if (!(std::isfinite(gamma) && gamma > 0.0 && gamma < 1.0))
        throw ParameterError(std::string(who) + ": gamma must lie in (0,1)");
}

void require_time(double x, const char* who) {
    if (!(std::isfinite(x) && x >= 0.0))
        throw ParameterError(std::string(who) + ": times must be finite and nonnegative");
}

// int_0^inf e^{-d y} (1 - e^{-m y}) y^{-1-gamma} dy for d, m >= 0, gamma in (0,1).
//
// (0, delta]: the integrand is m y^{-gamma} up to a term bounded by
//   (d+m)^2 / 2 * y^{1-gamma}, so the head is m delta^{1-gamma} / (1-gamma)
//   with error <= (d+m)^2 delta^{2-gamma} / (2 (2-gamma)); delta is chosen to
//   keep that below abs_tol / 10.
// [delta, Y]: adaptive Gauss-Kronrod, split at split_point.
// (Y, inf): for d > 0 the integrand is below e^{-dY} y^{-1-gamma}, giving the
//   bound e^{-dY} Y^{-1-gamma} / d. For d = 0 the 1 part is integrated exactly
//   (Y^{-gamma} / gamma) and the e^{-my} part is bounded by e^{-mY} Y^{-1-gamma} / m.
double two_exponential_integral(double d, double m, double gamma, const QuadratureConfig& q) {
    q.validate();
    if (m == 0.0) return 0.0;

    const double target = 0.1 * q.abs_tol;
    const double curvature = 0.5 * (d + m) * (d + m);
    const double delta = std::min(
        q.split_point, std::pow(target * (2.0 - gamma) / curvature, 1.0 / (2.0 - gamma)));
    const double head = m * std::pow(delta, 1.0 - gamma) / (1.0 - gamma);

    const auto integrand = [d, m, gamma](double y) {
        return std::exp(-d * y) * -std::expm1(-m * y) * std::pow(y, -1.0 - gamma);
    };

    const auto tail_bound = [&](double Y) {
        if (d > 0.0) return std::exp(-d * Y) * std::pow(Y, -1.0 - gamma) / d;
        return std::exp(-m * Y) * std::pow(Y, -1.0 - gamma) / m;
    };
    double cutoff = q.split_point;
    for (int k = 0; tail_bound(cutoff) > target; ++k) {
        if (k > 2000) throw ConvergenceError("oracle: tail cutoff search did not terminate");
        cutoff *= 2.0;
    }
    cutoff *= q.cutoff_multiplier;

    double body = 0.0;
    if (delta < q.split_point) body += integrate_adaptive(integrand, delta, q.split_point, q).value;
    body += integrate_adaptive(integrand, q.split_point, cutoff, q).value;

    const double exact_tail = d > 0.0 ? 0.0 : std::pow(cutoff, -gamma) / gamma;
    return head + body + exact_tail;
}

}  // namespace

double power_integral(double gamma, double x, const QuadratureConfig& q) {
    require_open_unit(gamma, "power_integral");
    require_time(x, "power_integral");
    if (x == 0.0) return 0.0;
    return c_gamma_const(gamma) * two_exponential_integral(0.0, x, gamma, q);
}

double c_gamma_integral(double gamma, double s, double t, const QuadratureConfig& q) {
    require_open_unit(gamma, "c_gamma_integral");
    require_time(s, "c_gamma_integral");
    require_time(t, "c_gamma_integral");
    const double lo = std::min(s, t);
    const double hi = std::max(s, t);
    if (lo == 0.0) return 0.0;
    const auto integrand = [hi, gamma](double u) { return std::pow(hi + u, gamma - 1.0); };
    return gamma * integrate_adaptive(integrand, 0.0, lo, q).value;
}

double q_gamma_integral(double gamma, double s, double t, const QuadratureConfig& q) {
    require_open_unit(gamma, "q_gamma_integral");
    require_time(s, "q_gamma_integral");
    require_time(t, "q_gamma_integral");
    const double lo = std::min(s, t);
    const double hi = std::max(s, t);
    if (hi == 0.0) return 0.0;
    return c_gamma_const(gamma) * two_exponential_integral(hi - lo, lo, gamma, q);
}

OracleReport oracle_report(double gamma, const TimeGrid& grid, const QuadratureConfig& q,
                           double check_abs_tol, double check_rel_tol) {
    require_open_unit(gamma, "oracle_report");
    if (!(check_abs_tol > 0.0) || !(check_rel_tol >= 0.0))
        throw ParameterError("oracle_report: check tolerances must be positive");

    OracleReport report;
    report.gamma = gamma;
    report.check_abs_tol = check_abs_tol;
    report.check_rel_tol = check_rel_tol;

    const auto c_spec = KernelSpec::c_gamma(gamma);
    const auto q_spec = KernelSpec::q_gamma(gamma);

    const auto record = [&](const char* kernel, double s, double t, double closed, double oracle) {
        const double err = std::abs(oracle - closed);
        report.max_abs_error = std::max(report.max_abs_error, err);
        if (closed != 0.0) report.max_rel_error = std::max(report.max_rel_error, err / std::abs(closed));
        const double ratio = err / std::max(check_abs_tol, check_rel_tol * std::abs(closed));
        if (ratio > report.max_tolerance_ratio || report.comparisons == 0) {
            report.max_tolerance_ratio = std::max(report.max_tolerance_ratio, ratio);
            report.worst_s = s;
            report.worst_t = t;
            report.worst_kernel = kernel;
        }
        ++report.comparisons;
    };

    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i; j < grid.size(); ++j) {
            const double s = grid[i];
            const double t = grid[j];
            try {
                record("cgamma", s, t, eval_kernel(c_spec, s, t), c_gamma_integral(gamma, s, t, q));
                record("qgamma", s, t, eval_kernel(q_spec, s, t), q_gamma_integral(gamma, s, t, q));
                if (i == j) record("power", s, s, power0(s, gamma), power_integral(gamma, s, q));
            } catch (const ConvergenceError& e) {
                throw ConvergenceError(std::string(e.what()) + " at (s,t)=(" + format_real(s) +
                                       "," + format_real(t) + ")");
            }
        }
    }
    return report;
}

}  // namespace bifbm
