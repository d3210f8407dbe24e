#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "bifbm/analysis.hpp"
#include "bifbm/gram.hpp"
#include "bifbm/kernels.hpp"
#include "bifbm/oracles.hpp"
#include "bifbm/region.hpp"
#include "bifbm/sampler.hpp"

namespace bifbm::io {

using json = nlohmann::json;

/// Serializes with every floating-point number rendered by format_real
/// (17 significant digits); NaN and infinities become null. Object keys keep
/// nlohmann's sorted order, so output is stable.
[[nodiscard]] std::string dump_json(const json& value, int indent = 2);

[[nodiscard]] json to_json(const TimeGrid& grid);
[[nodiscard]] json to_json(const ParamVerdict& verdict);
[[nodiscard]] json to_json(const PsdReport& report);
[[nodiscard]] json to_json(const GramMatrix& gram);
[[nodiscard]] json to_json(const CholeskyResult& chol);
[[nodiscard]] json to_json(const OracleReport& report);
[[nodiscard]] json to_json(const DeviationReport& report);
[[nodiscard]] json to_json(const QuasihelixReport& report);
[[nodiscard]] json to_json(const CriticalKEstimate& estimate);
[[nodiscard]] json to_json(const std::vector<TrendPoint>& trend);
[[nodiscard]] json to_json(const RegionScan& scan);
[[nodiscard]] json to_json(const SamplePaths& paths);
[[nodiscard]] json matrix_json(const Eigen::MatrixXd& m);

/// Sidecar metadata for a path file: seed, stream, method, kernel, grid, jitter.
[[nodiscard]] json sample_metadata(const SamplePaths& paths);

/// Row-major, comma separated, no header.
[[nodiscard]] std::string matrix_csv(const Eigen::MatrixXd& m);
/// Header row of grid times, then one row per path.
[[nodiscard]] std::string paths_csv(const SamplePaths& paths);
/// Header `H,K,min_eig,verdict`, one row per lattice cell.
[[nodiscard]] std::string region_csv(const RegionScan& scan);
/// Header `level,sum`.
[[nodiscard]] std::string variation_csv(std::span<const double> sums);

}  // namespace bifbm::io
