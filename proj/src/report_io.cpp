#include "bifbm/report_io.hpp"

#include <cmath>
#include <sstream>

#include "bifbm/format.hpp"

namespace bifbm::io {

namespace {

void write_json(const json& v, int indent, int depth, std::string& out) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (v.type()) {
        case json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                write_json(it.value(), indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        case json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line; matrices read row by row.
            const bool flat = std::none_of(v.begin(), v.end(),
                                           [](const json& e) { return e.is_structured(); });
            out += '[';
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += flat ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                write_json(e, indent, depth + 1, out);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case json::value_t::number_float: {
            const double x = v.get<double>();
            out += std::isfinite(x) ? format_real(x) : "null";
            return;
        }
        default:
            out += v.dump();
    }
}

json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string dump_json(const json& value, int indent) {
    std::string out;
    write_json(value, indent, 0, out);
    out += '\n';
    return out;
}

json to_json(const TimeGrid& grid) {
    return json(std::vector<double>(grid.times().begin(), grid.times().end()));
}

json to_json(const ParamVerdict& verdict) {
    return {{"region", std::string(to_string(verdict.region))}, {"explanation", verdict.explanation}};
}

json to_json(const PsdReport& report) {
    return {{"min_eigenvalue", report.min_eigenvalue},
            {"scale", report.scale},
            {"rel_tol", report.rel_tol},
            {"verdict", to_string(report.verdict)}};
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(real(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const GramMatrix& gram) {
    return {{"kernel", gram.spec.describe()}, {"grid", to_json(gram.grid)}, {"values", matrix_json(gram.values)}};
}

json to_json(const CholeskyResult& chol) {
    return {{"applied_jitter", chol.applied_jitter}, {"lower", matrix_json(chol.lower)}};
}

json to_json(const OracleReport& r) {
    return {{"gamma", r.gamma},
            {"max_abs_error", r.max_abs_error},
            {"max_rel_error", r.max_rel_error},
            {"max_tolerance_ratio", r.max_tolerance_ratio},
            {"worst_pair", {{"kernel", r.worst_kernel}, {"s", r.worst_s}, {"t", r.worst_t}}},
            {"comparisons", r.comparisons},
            {"check_abs_tol", r.check_abs_tol},
            {"check_rel_tol", r.check_rel_tol},
            {"pass", r.pass()}};
}

json to_json(const DeviationReport& r) {
    return {{"max_abs_deviation", r.max_abs_deviation},
            {"argmax", {r.arg_first, r.arg_second}},
            {"tolerance", r.tolerance},
            {"pass", r.pass}};
}

json to_json(const QuasihelixReport& r) {
    return {{"min_ratio", r.min_ratio}, {"max_ratio", r.max_ratio}, {"lower_bound", r.lower_bound},
            {"upper_bound", r.upper_bound}, {"pairs", r.pairs},           {"pass", r.pass}};
}

json to_json(const CriticalKEstimate& e) {
    json transitions = json::array();
    for (const auto& [before, after] : e.transitions) transitions.push_back({real(before), real(after)});
    return {{"H", e.H},
            {"K_low", real(e.K_low)},
            {"K_high", real(e.K_high)},
            {"resolution", e.resolution},
            {"bisection_iterations", e.bisection_iterations},
            {"status", to_string(e.status)},
            {"transitions", transitions},
            {"grid", to_json(e.grid)}};
}

json to_json(const std::vector<TrendPoint>& trend) {
    json rows = json::array();
    for (const auto& p : trend)
        rows.push_back({{"H", p.H}, {"two_hk_mid", real(p.two_hk_mid)}, {"estimate", to_json(p.estimate)}});
    return rows;
}

json to_json(const RegionScan& scan) {
    json cells = json::array();
    for (std::size_t h = 0; h < scan.H_values.size(); ++h) {
        for (std::size_t k = 0; k < scan.K_values.size(); ++k) {
            cells.push_back({{"H", scan.H_values[h]},
                             {"K", scan.K_values[k]},
                             {"min_eig", real(scan.min_eigs(static_cast<Eigen::Index>(h),
                                                            static_cast<Eigen::Index>(k)))},
                             {"verdict", to_string(scan.verdict(h, k))}});
        }
    }
    return {{"grid", to_json(scan.grid)}, {"rel_tol", scan.rel_tol}, {"cells", cells}};
}

json to_json(const SamplePaths& paths) {
    json rows = json::array();
    for (Eigen::Index p = 0; p < paths.values.rows(); ++p) {
        json row = json::array();
        for (Eigen::Index i = 0; i < paths.values.cols(); ++i) row.push_back(paths.values(p, i));
        rows.push_back(std::move(row));
    }
    return {{"times", to_json(paths.grid)}, {"paths", rows}};
}

json sample_metadata(const SamplePaths& paths) {
    return {{"master_seed", paths.seed.master_seed},
            {"stream", paths.seed.stream},
            {"method", paths.method},
            {"kernel", paths.spec.describe()},
            {"n_paths", paths.n_paths()},
            {"applied_jitter", paths.applied_jitter},
            {"grid", to_json(paths.grid)},
            {"rng", "philox4x32-10, key=(seed lo, seed hi), counter=(block, path lo, path hi, stream); "
                    "normals by Marsaglia polar method"}};
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ',';
            out += format_real(m(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string paths_csv(const SamplePaths& paths) {
    std::string out;
    for (std::size_t i = 0; i < paths.grid.size(); ++i) {
        if (i > 0) out += ',';
        out += format_real(paths.grid[i]);
    }
    out += '\n';
    for (Eigen::Index p = 0; p < paths.values.rows(); ++p) {
        for (Eigen::Index i = 0; i < paths.values.cols(); ++i) {
            if (i > 0) out += ',';
            out += format_real(paths.values(p, i));
        }
        out += '\n';
    }
    return out;
}

std::string region_csv(const RegionScan& scan) {
    std::string out = "H,K,min_eig,verdict\n";
    for (std::size_t h = 0; h < scan.H_values.size(); ++h) {
        for (std::size_t k = 0; k < scan.K_values.size(); ++k) {
            out += format_real(scan.H_values[h]) + ',' + format_real(scan.K_values[k]) + ',' +
                   format_real(scan.min_eigs(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(k))) +
                   ',' + to_string(scan.verdict(h, k)) + '\n';
        }
    }
    return out;
}

std::string variation_csv(std::span<const double> sums) {
    std::string out = "level,sum\n";
    for (std::size_t l = 0; l < sums.size(); ++l) out += std::to_string(l) + ',' + format_real(sums[l]) + '\n';
    return out;
}

}  // namespace bifbm::io
