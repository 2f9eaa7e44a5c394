#include "photon_lattice/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "photon_lattice/errors.hpp"

namespace photon_lattice {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_double(const std::string& key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(const std::string& key, std::string_view text) {
  text = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& key, std::string_view text) {
  const long long v = parse_integer(key, text);
  if (v < 0) throw ConfigError(key, "must not be negative");
  return static_cast<std::size_t>(v);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

GridSpec parse_grid(std::string_view text) {
  const std::string t = lower(trim(text));
  const auto x = t.find('x');
  if (x == std::string::npos) throw ConfigError("grid", "expected WxH, got '" + t + "'");
  const long long w = parse_integer("grid", std::string_view(t).substr(0, x));
  const long long h = parse_integer("grid", std::string_view(t).substr(x + 1));
  if (w < 1 || h < 1) throw ConfigError("grid", "extents must be positive, got '" + t + "'");
  if (w > 4096 || h > 4096) throw ConfigError("grid", "extents are unreasonably large");
  return GridSpec(static_cast<int>(w), static_cast<int>(h));
}

bool parse_bool(const std::string& key, std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key, "expected true or false, got '" + t + "'");
}

Scenario parse_scenario(std::string_view text) {
  const std::string t = lower(text);
  if (t == "closed") return Scenario::Closed;
  if (t == "open-a") return Scenario::OpenA;
  if (t == "open-b") return Scenario::OpenB;
  throw ConfigError("scenarios", "unknown scenario '" + t + "' (closed, open-a, open-b)");
}

RunSettings build_settings(const KeyValues& kv) {
  RunSettings rs;
  SimulationConfig& sim = rs.sim;
  std::optional<Representation> repr;

  for (const auto& [key, value] : kv) {
    if (key == "grid") {
      sim.grid = parse_grid(value);
    } else if (key == "method") {
      const std::string v = lower(trim(value));
      if (v == "a") sim.method = Method::A;
      else if (v == "b") sim.method = Method::B;
      else throw ConfigError(key, "expected a or b, got '" + v + "'");
    } else if (key == "boundary") {
      const std::string v = lower(trim(value));
      if (v == "closed") sim.boundary = Boundary::Closed;
      else if (v == "open") sim.boundary = Boundary::Open;
      else throw ConfigError(key, "expected closed or open, got '" + v + "'");
    } else if (key == "hbar") {
      sim.params.hbar = parse_double(key, value);
    } else if (key == "omega") {
      sim.params.omega = parse_double(key, value);
    } else if (key == "zeta") {
      sim.params.zeta = parse_double(key, value);
    } else if (key == "gamma") {
      sim.params.gamma = parse_double(key, value);
    } else if (key == "dt") {
      sim.params.dt = parse_double(key, value);
    } else if (key == "steps") {
      sim.total_steps = parse_count(key, value);
    } else if (key == "snapshots") {
      sim.snapshot_steps.clear();
      if (!trim(value).empty()) {
        for (auto part : split(value, ',')) sim.snapshot_steps.push_back(parse_count(key, part));
      }
    } else if (key == "repr") {
      const std::string v = lower(trim(value));
      if (v == "full") repr = Representation::FullDensity;
      else if (v == "block") repr = Representation::BlockDensity;
      else if (v == "pure") repr = Representation::PureState;
      else throw ConfigError(key, "expected full, block or pure, got '" + v + "'");
    } else if (key == "out") {
      if (trim(value).empty()) throw ConfigError(key, "output directory must not be empty");
      rs.out_dir = std::string(trim(value));
    } else if (key == "timeseries-stride") {
      rs.timeseries_stride = parse_count(key, value);
      if (rs.timeseries_stride == 0) throw ConfigError(key, "must be at least 1");
    } else if (key == "remove-phase") {
      sim.remove_uniform_phase = parse_bool(key, value);
    } else if (key != "scenarios") {
      throw ConfigError(key, "unknown setting");
    }
  }
  sim.representation = repr.value_or(sim.boundary == Boundary::Closed
                                         ? Representation::PureState
                                         : Representation::BlockDensity);
  sim.validate();
  return rs;
}

}  // namespace

KeyValues parse_config_text(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config", "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = lower(trim(line.substr(0, eq)));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw ConfigError("config", "line " + std::to_string(line_no) + ": empty key");
    if (kv.contains(key)) throw ConfigError(key, "set more than once");
    kv.emplace(std::move(key), std::string(trim(line.substr(eq + 1))));
  }
  return kv;
}

KeyValues load_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config", "cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

KeyValues merge(KeyValues base, const KeyValues& overrides) {
  for (const auto& [k, v] : overrides) base[k] = v;
  return base;
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::Closed: return "closed";
    case Scenario::OpenA: return "open-a";
    case Scenario::OpenB: return "open-b";
  }
  return "?";
}

RunSettings run_settings_from(const KeyValues& kv) {
  if (kv.contains("scenarios")) throw ConfigError("scenarios", "only valid for compare");
  return build_settings(kv);
}

CompareSettings compare_settings_from(const KeyValues& kv) {
  CompareSettings cmp;
  const auto it = kv.find("scenarios");
  if (it == kv.end()) throw ConfigError("scenarios", "compare needs at least two scenarios");
  for (auto part : split(it->second, ',')) {
    const Scenario s = parse_scenario(part);
    if (std::find(cmp.scenarios.begin(), cmp.scenarios.end(), s) != cmp.scenarios.end()) {
      throw ConfigError("scenarios", "scenario '" + std::string(to_string(s)) + "' listed twice");
    }
    cmp.scenarios.push_back(s);
  }
  if (cmp.scenarios.size() < 2) throw ConfigError("scenarios", "compare needs at least two scenarios");
  for (const char* key : {"method", "boundary"}) {
    if (kv.contains(key)) throw ConfigError(key, "set per scenario by compare; remove it");
  }
  KeyValues base = kv;
  base.erase("scenarios");
  cmp.base = build_settings(base);
  if (base.contains("repr")) cmp.representation = cmp.base.sim.representation;
  for (Scenario s : cmp.scenarios) scenario_settings(cmp, s).sim.validate();
  return cmp;
}

RunSettings scenario_settings(const CompareSettings& cmp, Scenario s) {
  RunSettings rs = cmp.base;
  rs.out_dir = cmp.base.out_dir / std::string(to_string(s));
  switch (s) {
    case Scenario::Closed:
      rs.sim.method = Method::A;
      rs.sim.boundary = Boundary::Closed;
      break;
    case Scenario::OpenA:
      rs.sim.method = Method::A;
      rs.sim.boundary = Boundary::Open;
      break;
    case Scenario::OpenB:
      rs.sim.method = Method::B;
      rs.sim.boundary = Boundary::Open;
      break;
  }
  rs.sim.representation = cmp.representation.value_or(
      rs.sim.boundary == Boundary::Closed ? Representation::PureState
                                          : Representation::BlockDensity);
  return rs;
}

nlohmann::json to_json(const RunSettings& settings) {
  const SimulationConfig& sim = settings.sim;
  nlohmann::json snaps = sim.snapshot_steps;
  return {{"grid", std::to_string(sim.grid.width()) + "x" + std::to_string(sim.grid.height())},
          {"method", std::string(to_string(sim.method))},
          {"boundary", std::string(to_string(sim.boundary))},
          {"hbar", sim.params.hbar},
          {"omega", sim.params.omega},
          {"zeta", sim.params.zeta},
          {"gamma", sim.params.gamma},
          {"dt", sim.params.dt},
          {"steps", sim.total_steps},
          {"snapshots", std::move(snaps)},
          {"repr", std::string(to_string(sim.representation))},
          {"remove-phase", sim.remove_uniform_phase},
          {"timeseries-stride", settings.timeseries_stride},
          {"deterministic", true}};
}

}  // namespace photon_lattice
