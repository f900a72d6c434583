// Copyright 2026 The softplex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "softplex/constants.hpp"
#include "softplex/density.hpp"
#include "softplex/experiment.hpp"
#include "softplex/geometry.hpp"
#include "softplex/point_process.hpp"

namespace softplex {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ConfigError with line and column.
Json parse_json(std::string_view text, std::string_view source = "<input>");
/// Reads and parses a file; a missing file is a ConfigError.
Json read_json_file(const std::string& path);

Density density_from_json(const Json& j);
Json density_to_json(const Density& density);
/// "uniform" (unit cube) or "gaussian" (standard, centered) in dimension d.
Density density_from_name(std::string_view name, std::size_t d);

Region region_from_json(const Json& j);
Json region_to_json(const Region& region);

ExperimentConfig config_from_json(const Json& j);
/// Canonical form; round-trips through config_from_json.
Json config_to_json(const ExperimentConfig& config);

Json constant_to_json(const ConstantEstimate& estimate);
Json regime_to_json(const RegimeReport& report);
Json clt_report_to_json(const CltReport& report);
Json depoisson_to_json(const DepoissonReport& report);

/// Runs one constant estimate described by a JSON request with keys kind, k, l, j,
/// density, d, region, samples, seed, shards. Returns {value, stderr, samples, params}.
Json estimate_constant_json(const Json& request, unsigned threads = 0);
/// Regime check from a JSON request with keys n, d, r or a, k or l, rho or b, thresholds.
Json regime_check_json(const Json& request);

/// Applies top-level overrides, validates, and returns the canonical config.
Json resolve_config(const Json& config, const Json& overrides);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

/// One row per point, columns x0..x{d-1}.
void write_points_csv(std::ostream& out, const PointCloud& cloud);

/// `# <config json>` line, header rep,f0..fkmax,chi,n_points,seconds, one row per replication.
/// The seconds column is 0 unless `timing` is set.
void write_results_csv(std::ostream& out, const ExperimentConfig& config,
                       const std::vector<ReplicationResult>& results, bool timing = false);

struct ResultsFile {
  std::optional<Json> config;  // from the leading comment line, if present
  std::size_t k_max = 0;
  std::vector<ReplicationResult> results;
};
ResultsFile read_results_csv(std::istream& in);

}  // namespace softplex
