#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "photon_lattice/evolution.hpp"
#include "photon_lattice/run_config.hpp"

namespace photon_lattice {

inline constexpr const char* kEngineVersion = "0.1.0";

/// Shortest round-trippable form: 17 significant digits.
std::string format_number(double v);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

std::string heatmap_file_name(std::size_t step);

struct RunOutcome {
  Trajectory trajectory;
  nlohmann::json manifest;
};

/// Runs one simulation and writes into settings.out_dir:
///   heatmap_step<N>.csv  per snapshot, H rows by L columns, row h = 0 first
///   marginals.csv        one row of column marginals per snapshot
///   snapshots.csv        scalar observables per snapshot
///   timeseries.csv       scalar observables every timeseries-stride steps
///   manifest.json        settings echo, basis, channels, file checksums
/// Heatmap and marginal values are clamped to [0, 1]; the evolving state is not.
RunOutcome execute_run(const RunSettings& settings, std::ostream* progress = nullptr);

struct CompareOutcome {
  std::vector<std::pair<Scenario, RunOutcome>> runs;
  nlohmann::json manifest;
};

/// Runs each scenario into its own subdirectory of out_dir and writes
/// differences.csv (pairwise maximum site-probability deviation and
/// per-scenario populations at each snapshot) plus a top-level manifest.json.
CompareOutcome execute_compare(const CompareSettings& settings,
                               std::ostream* progress = nullptr);

}  // namespace photon_lattice
