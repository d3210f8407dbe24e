#include "bifbm/region.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "bifbm/error.hpp"
#include "bifbm/parallel.hpp"

namespace bifbm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> lattice(Interval range, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = range.lo + (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.back() = range.hi;
    return out;
}

bool is_psd(double H, double K, const TimeGrid& grid, double rel_tol) {
    return psd_check(build_gram(KernelSpec::bifbm(H, K), grid), rel_tol).verdict == PsdVerdict::PSD;
}

}  // namespace

const char* to_string(CellVerdict v) noexcept {
    switch (v) {
        case CellVerdict::PSD: return "PSD";
        case CellVerdict::NotPSD: return "NotPSD";
        case CellVerdict::Error: return "Error";
    }
    return "Error";
}

const char* to_string(CriticalKStatus s) noexcept {
    switch (s) {
        case CriticalKStatus::Bracketed: return "bracketed";
        case CriticalKStatus::NoTransition: return "no transition detected on this grid";
        case CriticalKStatus::NotPsdAtStart: return "not PSD at K = 1/(2H)";
        case CriticalKStatus::NonMonotone: return "non-monotone verdicts";
    }
    return "";
}

TimeGrid default_exploration_grid() {
    return TimeGrid::geometric(0x1.0p-6, 0x1.0p6, 24).merged(TimeGrid({1000.0}));
}

RegionScan scan_region(Interval H_range, Interval K_range, std::pair<std::size_t, std::size_t> steps,
                       const TimeGrid& grid, double rel_tol, unsigned threads) {
    if (!(H_range.lo > 0.0 && H_range.hi >= H_range.lo && K_range.lo > 0.0 && K_range.hi >= K_range.lo))
        throw ParameterError("scan_region: ranges must be positive intervals");
    if (steps.first < 2 || steps.second < 2) throw ParameterError("scan_region: steps must be >= 2");
    if (!(rel_tol >= 0.0)) throw ParameterError("scan_region: rel_tol must be nonnegative");

    RegionScan scan{lattice(H_range, steps.first), lattice(K_range, steps.second), grid, rel_tol,
                    Eigen::MatrixXd(static_cast<Eigen::Index>(steps.first),
                                    static_cast<Eigen::Index>(steps.second)),
                    std::vector<CellVerdict>(steps.first * steps.second, CellVerdict::Error)};

    parallel_for(steps.first * steps.second, threads, [&](std::size_t cell) {
        const std::size_t h = cell / steps.second;
        const std::size_t k = cell % steps.second;
        const auto row = static_cast<Eigen::Index>(h);
        const auto col = static_cast<Eigen::Index>(k);
        try {
            const auto report =
                psd_check(build_gram(KernelSpec::bifbm(scan.H_values[h], scan.K_values[k]), grid), rel_tol);
            scan.min_eigs(row, col) = report.min_eigenvalue;
            scan.verdicts[cell] =
                report.verdict == PsdVerdict::PSD ? CellVerdict::PSD : CellVerdict::NotPSD;
        } catch (const Error&) {
            scan.min_eigs(row, col) = kNaN;
            scan.verdicts[cell] = CellVerdict::Error;
        }
    });
    return scan;
}

CriticalKEstimate critical_k(double H, const TimeGrid& grid, double resolution, double rel_tol,
                             unsigned threads) {
    if (!(std::isfinite(H) && H > 0.0)) throw ParameterError("critical_k: H must be positive");
    if (!(resolution > 0.0)) throw ParameterError("critical_k: resolution must be positive");

    const double start = 0.5 / H;
    const double stop = 1.0 / H + 0.1;
    const auto coarse_count = static_cast<std::size_t>(std::floor((stop - start) / kCoarseKStep + 1e-9)) + 1;
    const auto coarse_k = [&](double units) { return start + kCoarseKStep * units; };

    std::vector<char> psd(coarse_count);
    parallel_for(coarse_count, threads, [&](std::size_t i) {
        psd[i] = is_psd(H, coarse_k(static_cast<double>(i)), grid, rel_tol) ? 1 : 0;
    });

    CriticalKEstimate est{H, kNaN, kNaN, grid, 0, resolution, CriticalKStatus::NoTransition, {}};
    for (std::size_t i = 0; i + 1 < coarse_count; ++i) {
        if (psd[i] != psd[i + 1])
            est.transitions.emplace_back(coarse_k(static_cast<double>(i)),
                                         coarse_k(static_cast<double>(i + 1)));
    }

    if (!psd[0]) {
        est.status = CriticalKStatus::NotPsdAtStart;
        est.K_high = start;
        if (est.transitions.empty()) return est;
        est.status = CriticalKStatus::NonMonotone;
        return est;
    }
    if (est.transitions.empty()) {
        est.K_low = coarse_k(static_cast<double>(coarse_count - 1));
        return est;
    }
    if (est.transitions.size() > 1) {
        est.status = CriticalKStatus::NonMonotone;
        est.K_low = est.transitions.front().first;
        est.K_high = est.transitions.front().second;
        return est;
    }

    // Single PSD -> NotPSD change between coarse cells i and i+1. Bisect on the
    // lattice start + step * (i + u / 2^r), which is shared by every grid.
    std::size_t cell = 0;
    while (psd[cell + 1]) ++cell;
    const int r = std::max(0, static_cast<int>(std::ceil(std::log2(kCoarseKStep / resolution))));
    const double denom = std::ldexp(1.0, r);
    std::uint64_t lo = 0;
    std::uint64_t hi = std::uint64_t{1} << r;
    const auto lattice_k = [&](std::uint64_t u) {
        return coarse_k(static_cast<double>(cell) + static_cast<double>(u) / denom);
    };
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (is_psd(H, lattice_k(mid), grid, rel_tol))
            lo = mid;
        else
            hi = mid;
        ++est.bisection_iterations;
    }
    est.K_low = lattice_k(lo);
    est.K_high = lattice_k(hi);
    est.status = CriticalKStatus::Bracketed;
    return est;
}

std::vector<TrendPoint> hk_trend(std::span<const double> H_list, const TimeGrid& grid,
                                 double resolution, double rel_tol, unsigned threads) {
    for (std::size_t i = 0; i < H_list.size(); ++i) {
        if (!(H_list[i] > 1.0)) throw ParameterError("hk_trend: every H must exceed 1");
        if (i > 0 && !(H_list[i] > H_list[i - 1]))
            throw ParameterError("hk_trend: H values must be increasing");
    }
    std::vector<TrendPoint> out;
    out.reserve(H_list.size());
    for (double H : H_list) {
        auto est = critical_k(H, grid, resolution, rel_tol, threads);
        const double mid = est.status == CriticalKStatus::Bracketed ? 2.0 * H * est.K_mid() : kNaN;
        out.push_back(TrendPoint{H, mid, std::move(est)});
    }
    return out;
}

}  // namespace bifbm
