#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "photon_lattice/evolution.hpp"

namespace photon_lattice {

/// Flat `key = value` settings. Keys match the long command-line flags
/// without the leading dashes.
using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
/// Throws ConfigError on malformed lines or repeated keys.
KeyValues parse_config_text(std::string_view text);
KeyValues load_config_file(const std::filesystem::path& path);

/// Entries of `overrides` replace those of `base`.
KeyValues merge(KeyValues base, const KeyValues& overrides);

struct RunSettings {
  SimulationConfig sim;
  std::filesystem::path out_dir = "out";
  std::size_t timeseries_stride = 10;
};

enum class Scenario { Closed, OpenA, OpenB };

std::string_view to_string(Scenario s);

struct CompareSettings {
  RunSettings base;
  std::vector<Scenario> scenarios;
  /// Set when `repr` was given; otherwise chosen per scenario boundary.
  std::optional<Representation> representation;
};

/// Builds validated run settings. Unset keys take the defaults; `repr`
/// defaults to `pure` for closed and `block` for open boundaries.
/// Throws ConfigError naming the offending key.
RunSettings run_settings_from(const KeyValues& kv);

/// As run_settings_from, plus `scenarios`: a comma-separated list of at
/// least two distinct entries from closed, open-a, open-b.
CompareSettings compare_settings_from(const KeyValues& kv);

/// The run settings for one scenario of a comparison.
RunSettings scenario_settings(const CompareSettings& cmp, Scenario s);

nlohmann::json to_json(const RunSettings& settings);

}  // namespace photon_lattice
