#pragma once

// Closed-form covariance kernels of the bifractional Brownian motion family
// and the building blocks of its decomposition.

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace bifbm {

class KernelSpec;

namespace kernel {

/// 2^{-K} ((t^{2H} + s^{2H})^K - |t-s|^{2HK})
struct BifBm {
    double H;
    double K;
};

/// (s^{2H} + t^{2H} - |t-s|^{2H}) / 2
struct FBm {
    double H;
};

/// (s+t)^gamma - max(s,t)^gamma
struct CGamma {
    double gamma;
};

/// max(s,t)^gamma - |t-s|^gamma
struct QGamma {
    double gamma;
};

/// (s^{2HK} + t^{2HK} - (t^{2H} + s^{2H})^K) / 2
struct LeiNualartRemainder {
    double H;
    double K;
};

/// min(s,t), the Brownian covariance.
struct Min {};

/// base(s^theta, t^theta)
struct TimeChange {
    std::shared_ptr<const KernelSpec> base;
    double theta;
};

/// c * base(s,t)
struct Scale {
    std::shared_ptr<const KernelSpec> base;
    double c;
};

struct Sum {
    std::shared_ptr<const KernelSpec> left;
    std::shared_ptr<const KernelSpec> right;
};

}  // namespace kernel

/// Immutable, validated description of a covariance kernel. Instances can only
/// be obtained through the named constructors, which reject parameters outside
/// the admissible ranges.
class KernelSpec {
public:
    using Variant = std::variant<kernel::BifBm, kernel::FBm, kernel::CGamma, kernel::QGamma,
                                 kernel::LeiNualartRemainder, kernel::Min, kernel::TimeChange,
                                 kernel::Scale, kernel::Sum>;

    static KernelSpec bifbm(double H, double K);
    static KernelSpec fbm(double H);
    /// gamma > 1 is accepted; nonnegative definiteness is a separate question.
    static KernelSpec c_gamma(double gamma);
    static KernelSpec q_gamma(double gamma);
    static KernelSpec lei_nualart_remainder(double H, double K);
    static KernelSpec min();
    static KernelSpec time_change(KernelSpec base, double theta);
    static KernelSpec scale(KernelSpec base, double c);
    static KernelSpec sum(KernelSpec left, KernelSpec right);

    [[nodiscard]] const Variant& variant() const noexcept { return v_; }

    /// Compact textual form, e.g. "scale(time_change(cgamma(0.25),4),0.84089641525371461)".
    [[nodiscard]] std::string describe() const;

private:
    explicit KernelSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Kernel value at (s,t). Symmetric bit-for-bit; throws ParameterError for
/// negative or non-finite times.
[[nodiscard]] double eval_kernel(const KernelSpec& spec, double s, double t);

/// E|xi(t) - xi(s)|^2 = k(s,s) + k(t,t) - 2 k(s,t).
[[nodiscard]] double increment_variance(const KernelSpec& spec, double s, double t);

enum class ParamRegion { TheoremRegion, OtherKnownRegion, NecessaryViolated, Unknown };

[[nodiscard]] std::string_view to_string(ParamRegion region) noexcept;

struct ParamVerdict {
    ParamRegion region;
    std::string explanation;
};

/// Where (H,K) sits relative to the known existence results for the
/// bifractional covariance. Precedence: TheoremRegion, OtherKnownRegion,
/// NecessaryViolated, Unknown.
[[nodiscard]] ParamVerdict classify_params(double H, double K);

/// True iff 0 < K <= 1 and 2HK <= 1 (with a 1e-12 relative slack on the
/// boundary so that K = 1/(2H) computed in floating point is included).
[[nodiscard]] bool in_theorem_region(double H, double K) noexcept;

/// gamma / Gamma(1 - gamma), the normalizing constant of
/// x^gamma = c * int_0^inf (1 - e^{-xy}) y^{-1-gamma} dy. Requires 0 < gamma < 1.
[[nodiscard]] double c_gamma_const(double gamma);

/// x^p for x >= 0, p > 0, with x == 0 mapped to 0.
[[nodiscard]] double power0(double x, double p) noexcept;

}  // namespace bifbm
