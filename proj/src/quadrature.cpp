#include "bifbm/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "bifbm/error.hpp"

namespace bifbm {

namespace {

// Kronrod abscissae (nonnegative half) and weights; odd indices are the
// embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    if (!std::isfinite(kronrod))
        throw NumericError("integrate_adaptive: non-finite integrand on [" + std::to_string(a) +
                           ", " + std::to_string(b) + "]");
    return Segment{a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw ParameterError("quadrature: tolerances must be positive");
    if (max_subdivisions < 16) throw ParameterError("quadrature: max_subdivisions must be >= 16");
    if (!(split_point > 0.0) || !std::isfinite(split_point))
        throw ParameterError("quadrature: split_point must be positive");
    if (!(cutoff_multiplier >= 1.0) || !std::isfinite(cutoff_multiplier))
        throw ParameterError("quadrature: cutoff_multiplier must be >= 1");
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg) {
    cfg.validate();
    if (a == b) return {0.0, 0.0, 0};
    if (!(b > a)) throw ParameterError("integrate_adaptive: requires a <= b");

    std::priority_queue<Segment> heap;
    Segment first = gauss_kronrod(f, a, b);
    double total = first.value;
    double error = first.error;
    heap.push(first);
    std::size_t subdivisions = 0;

    while (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        if (subdivisions >= cfg.max_subdivisions)
            throw ConvergenceError("integrate_adaptive: tolerance not reached after " +
                                   std::to_string(subdivisions) + " subdivisions (error " +
                                   std::to_string(error) + ")");
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw ConvergenceError("integrate_adaptive: interval too small to bisect");
        const Segment left = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum to shed accumulated update rounding.
    total = 0.0;
    error = 0.0;
    std::vector<Segment> parts;
    parts.reserve(heap.size());
    while (!heap.empty()) {
        parts.push_back(heap.top());
        heap.pop();
    }
    for (const auto& p : parts) {
        total += p.value;
        error += p.error;
    }
    return {total, error, subdivisions};
}

}  // namespace bifbm
