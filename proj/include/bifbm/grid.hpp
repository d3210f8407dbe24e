#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bifbm {

/// Strictly increasing, nonnegative, nonempty sequence of time points.
class TimeGrid {
public:
    /// Throws GridError unless `times` is nonempty, finite, >= 0 and strictly increasing.
    explicit TimeGrid(std::vector<double> times);

    /// n points from a to b inclusive, equally spaced.
    static TimeGrid uniform(double a, double b, std::size_t n);
    /// n points from a to b inclusive, equally spaced in log scale (requires a > 0).
    static TimeGrid geometric(double a, double b, std::size_t n);
    /// Parses `uniform:a:b:n`, `geom:a:b:n` or `list:t1,t2,...`.
    static TimeGrid parse(std::string_view text);

    [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return times_[i]; }
    [[nodiscard]] std::span<const double> times() const noexcept { return times_; }
    [[nodiscard]] double front() const noexcept { return times_.front(); }
    [[nodiscard]] double back() const noexcept { return times_.back(); }

    [[nodiscard]] bool starts_at_zero() const noexcept { return times_.front() == 0.0; }
    /// Equal spacing to relative tolerance `rel_tol` of the mean step.
    [[nodiscard]] bool is_uniform(double rel_tol = 1e-9) const noexcept;

    /// Sorted union with another grid; exact duplicates are merged.
    [[nodiscard]] TimeGrid merged(const TimeGrid& other) const;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    std::vector<double> times_;
};

}  // namespace bifbm
