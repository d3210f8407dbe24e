#include "bifbm/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "bifbm/error.hpp"
#include "bifbm/format.hpp"

namespace bifbm {

namespace {

constexpr double kBoundarySlack = 1e-12;

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

void require(bool ok, const char* what) {
    if (!ok) throw ParameterError(what);
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// (1+x)^p - 1 and 1 - (1-y)^p without cancellation.
double grow(double x, double p) { return std::expm1(p * std::log1p(x)); }
double shrink(double y, double p) { return y >= 1.0 ? 1.0 : -std::expm1(p * std::log1p(-y)); }

// Both arguments already ordered: 0 <= lo <= hi. Powers are factored out of
// hi so that small lo/hi does not cancel.
double eval_ordered(const KernelSpec& spec, double lo, double hi) {
    return std::visit(
        Overloaded{
            [&](const kernel::BifBm& k) {
                const double hk2 = 2.0 * k.H * k.K;
                if (lo == 0.0) return 0.0;
                if (lo == hi) return std::pow(hi, hk2);
                const double y = lo / hi;
                const double x = std::pow(y, 2.0 * k.H);
                return std::exp2(-k.K) * std::pow(hi, hk2) * (grow(x, k.K) + shrink(y, hk2));
            },
            [&](const kernel::FBm& k) {
                if (lo == 0.0) return 0.0;
                if (lo == hi) return std::pow(hi, 2.0 * k.H);
                const double y = lo / hi;
                return 0.5 * std::pow(hi, 2.0 * k.H) * (std::pow(y, 2.0 * k.H) + shrink(y, 2.0 * k.H));
            },
            [&](const kernel::CGamma& k) {
                if (k.gamma == 1.0) return lo;
                if (lo == 0.0) return 0.0;
                return std::pow(hi, k.gamma) * grow(lo / hi, k.gamma);
            },
            [&](const kernel::QGamma& k) {
                if (k.gamma == 1.0) return lo;
                if (lo == 0.0) return 0.0;
                return std::pow(hi, k.gamma) * shrink(lo / hi, k.gamma);
            },
            [&](const kernel::LeiNualartRemainder& k) {
                if (lo == 0.0) return 0.0;
                const double hk2 = 2.0 * k.H * k.K;
                const double y = lo / hi;
                return 0.5 * std::pow(hi, hk2) * (std::pow(y, hk2) - grow(std::pow(y, 2.0 * k.H), k.K));
            },
            [&](const kernel::Min&) { return lo; },
            [&](const kernel::TimeChange& k) {
                return eval_ordered(*k.base, power0(lo, k.theta), power0(hi, k.theta));
            },
            [&](const kernel::Scale& k) { return k.c * eval_ordered(*k.base, lo, hi); },
            [&](const kernel::Sum& k) {
                return eval_ordered(*k.left, lo, hi) + eval_ordered(*k.right, lo, hi);
            },
        },
        spec.variant());
}

}  // namespace

double power0(double x, double p) noexcept {
    if (x == 0.0) return 0.0;
    return std::pow(x, p);
}

KernelSpec KernelSpec::bifbm(double H, double K) {
    require(finite_positive(H), "bifbm: H must be positive");
    require(finite_positive(K), "bifbm: K must be positive");
    return KernelSpec(kernel::BifBm{H, K});
}

KernelSpec KernelSpec::fbm(double H) {
    require(finite_positive(H) && H <= 1.0, "fbm: H must lie in (0,1]");
    return KernelSpec(kernel::FBm{H});
}

KernelSpec KernelSpec::c_gamma(double gamma) {
    require(finite_positive(gamma), "cgamma: gamma must be positive");
    return KernelSpec(kernel::CGamma{gamma});
}

KernelSpec KernelSpec::q_gamma(double gamma) {
    require(finite_positive(gamma), "qgamma: gamma must be positive");
    return KernelSpec(kernel::QGamma{gamma});
}

KernelSpec KernelSpec::lei_nualart_remainder(double H, double K) {
    require(finite_positive(H), "lei-nualart: H must be positive");
    require(finite_positive(K) && K <= 1.0, "lei-nualart: K must lie in (0,1]");
    return KernelSpec(kernel::LeiNualartRemainder{H, K});
}

KernelSpec KernelSpec::min() { return KernelSpec(kernel::Min{}); }

KernelSpec KernelSpec::time_change(KernelSpec base, double theta) {
    require(finite_positive(theta), "time_change: theta must be positive");
    return KernelSpec(
        kernel::TimeChange{std::make_shared<const KernelSpec>(std::move(base)), theta});
}

KernelSpec KernelSpec::scale(KernelSpec base, double c) {
    require(std::isfinite(c) && c >= 0.0, "scale: c must be nonnegative");
    return KernelSpec(kernel::Scale{std::make_shared<const KernelSpec>(std::move(base)), c});
}

KernelSpec KernelSpec::sum(KernelSpec left, KernelSpec right) {
    return KernelSpec(kernel::Sum{std::make_shared<const KernelSpec>(std::move(left)),
                                  std::make_shared<const KernelSpec>(std::move(right))});
}

std::string KernelSpec::describe() const {
    const auto r = [](double x) { return format_real(x); };
    return std::visit(
        Overloaded{
            [&](const kernel::BifBm& k) { return "bifbm(" + r(k.H) + "," + r(k.K) + ")"; },
            [&](const kernel::FBm& k) { return "fbm(" + r(k.H) + ")"; },
            [&](const kernel::CGamma& k) { return "cgamma(" + r(k.gamma) + ")"; },
            [&](const kernel::QGamma& k) { return "qgamma(" + r(k.gamma) + ")"; },
            [&](const kernel::LeiNualartRemainder& k) {
                return "lei_nualart(" + r(k.H) + "," + r(k.K) + ")";
            },
            [&](const kernel::Min&) { return std::string("min"); },
            [&](const kernel::TimeChange& k) {
                return "time_change(" + k.base->describe() + "," + r(k.theta) + ")";
            },
            [&](const kernel::Scale& k) {
                return "scale(" + k.base->describe() + "," + r(k.c) + ")";
            },
            [&](const kernel::Sum& k) {
                return "sum(" + k.left->describe() + "," + k.right->describe() + ")";
            },
        },
        v_);
}

double eval_kernel(const KernelSpec& spec, double s, double t) {
    if (!(std::isfinite(s) && std::isfinite(t) && s >= 0.0 && t >= 0.0))
        throw ParameterError("eval_kernel: times must be finite and nonnegative");
    return eval_ordered(spec, std::min(s, t), std::max(s, t));
}

double increment_variance(const KernelSpec& spec, double s, double t) {
    if (s == t) return 0.0;
    return eval_kernel(spec, s, s) + eval_kernel(spec, t, t) - 2.0 * eval_kernel(spec, s, t);
}

std::string_view to_string(ParamRegion region) noexcept {
    switch (region) {
        case ParamRegion::TheoremRegion: return "TheoremRegion";
        case ParamRegion::OtherKnownRegion: return "OtherKnownRegion";
        case ParamRegion::NecessaryViolated: return "NecessaryViolated";
        case ParamRegion::Unknown: return "Unknown";
    }
    return "Unknown";
}

bool in_theorem_region(double H, double K) noexcept {
    return finite_positive(H) && finite_positive(K) && K <= 1.0 &&
           2.0 * H * K <= 1.0 + kBoundarySlack;
}

ParamVerdict classify_params(double H, double K) {
    require(finite_positive(H), "classify_params: H must be positive");
    require(finite_positive(K), "classify_params: K must be positive");

    if (in_theorem_region(H, K))
        return {ParamRegion::TheoremRegion, "0 < K <= 1 and 2HK <= 1: nonnegative definite"};

    const double inv_h = 1.0 / H;
    const bool classical = H <= 1.0 && K <= std::min(2.0, inv_h) * (1.0 + kBoundarySlack);
    const bool half_line = H > 1.0 && std::abs(K - 0.5 * inv_h) <= kBoundarySlack * K;
    if (classical || half_line)
        return {ParamRegion::OtherKnownRegion,
                "covered by known existence results outside 2HK <= 1"};

    if (K > inv_h * (1.0 + kBoundarySlack))
        return {ParamRegion::NecessaryViolated,
                "K > 1/H: Cauchy-Schwarz fails for R(1,t) as t grows"};

    if (H <= 1.0)
        return {ParamRegion::Unknown, "H <= 1 with 2 < K <= 1/H: status not settled"};
    return {ParamRegion::Unknown, "H > 1 with 1/(2H) < K <= 1/H: status open"};
}

double c_gamma_const(double gamma) {
    require(std::isfinite(gamma) && gamma > 0.0 && gamma < 1.0,
            "c_gamma_const: gamma must lie in (0,1)");
    return gamma / std::tgamma(1.0 - gamma);
}

}  // namespace bifbm
