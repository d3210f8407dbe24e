#include "bifbm/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "bifbm/error.hpp"

namespace bifbm {

namespace {

double parse_double(std::string_view s) {
    // std::from_chars for double is available in libstdc++ 11.
    double value = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || s.empty())
        throw GridError("grid: cannot parse number '" + std::string(s) + "'");
    return value;
}

std::size_t parse_count(std::string_view s) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw GridError("grid: cannot parse count '" + std::string(s) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.empty()) throw GridError("grid: at least one time point is required");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        const double t = times_[i];
        if (!std::isfinite(t) || t < 0.0)
            throw GridError("grid: time points must be finite and nonnegative");
        if (i > 0 && !(t > times_[i - 1]))
            throw GridError("grid: time points must be strictly increasing without duplicates");
    }
}

TimeGrid TimeGrid::uniform(double a, double b, std::size_t n) {
    if (n == 0) throw GridError("grid: n must be positive");
    if (n == 1) return TimeGrid({a});
    if (!(b > a)) throw GridError("grid: uniform requires b > a");
    std::vector<double> t(n);
    const double step = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) t[i] = a + step * static_cast<double>(i);
    t.back() = b;
    return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::geometric(double a, double b, std::size_t n) {
    if (!(a > 0.0)) throw GridError("grid: geometric requires a > 0");
    if (n == 0) throw GridError("grid: n must be positive");
    if (n == 1) return TimeGrid({a});
    if (!(b > a)) throw GridError("grid: geometric requires b > a");
    std::vector<double> t(n);
    const double la = std::log(a);
    const double step = (std::log(b) - la) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) t[i] = std::exp(la + step * static_cast<double>(i));
    t.front() = a;
    t.back() = b;
    return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw GridError("grid: expected uniform:a:b:n, geom:a:b:n or list:t1,t2,...");
    const auto kind = text.substr(0, colon);
    const auto rest = text.substr(colon + 1);
    if (kind == "list") {
        std::vector<double> t;
        for (auto item : split(rest, ',')) t.push_back(parse_double(item));
        return TimeGrid(std::move(t));
    }
    const auto parts = split(rest, ':');
    if (parts.size() != 3) throw GridError("grid: expected " + std::string(kind) + ":a:b:n");
    const double a = parse_double(parts[0]);
    const double b = parse_double(parts[1]);
    const std::size_t n = parse_count(parts[2]);
    if (kind == "uniform") return uniform(a, b, n);
    if (kind == "geom") return geometric(a, b, n);
    throw GridError("grid: unknown generator '" + std::string(kind) + "'");
}

bool TimeGrid::is_uniform(double rel_tol) const noexcept {
    if (times_.size() < 2) return true;
    const double step = (times_.back() - times_.front()) / static_cast<double>(times_.size() - 1);
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (std::abs((times_[i] - times_[i - 1]) - step) > rel_tol * step) return false;
    }
    return true;
}

TimeGrid TimeGrid::merged(const TimeGrid& other) const {
    std::vector<double> t;
    t.reserve(times_.size() + other.size());
    std::set_union(times_.begin(), times_.end(), other.times_.begin(), other.times_.end(),
                   std::back_inserter(t));
    return TimeGrid(std::move(t));
}

}  // namespace bifbm
