#include "photon_lattice/export.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <stdexcept>

#include <openssl/evp.h>

namespace photon_lattice {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 initialisation failed");
  }
  char buf[1 << 16];
  while (is) {
    is.read(buf, sizeof buf);
    if (is.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(is.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string heatmap_file_name(std::size_t step) {
  return "heatmap_step" + std::to_string(step) + ".csv";
}

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return os;
}

void check_written(std::ofstream& os, const fs::path& path) {
  os.flush();
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

void prepare_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             (ec ? ": " + ec.message() : ""));
  }
}

nlohmann::json file_entry(const fs::path& dir, const std::string& name) {
  const fs::path p = dir / name;
  return {{"name", name}, {"bytes", fs::file_size(p)}, {"sha256", sha256_file(p)}};
}

/// Streams one trajectory's CSV files as snapshots and samples arrive.
class RunWriter {
 public:
  RunWriter(fs::path dir, const GridSpec& grid) : dir_(std::move(dir)) {
    prepare_directory(dir_);
    marginals_ = open_output(dir_ / "marginals.csv");
    snapshots_ = open_output(dir_ / "snapshots.csv");
    series_ = open_output(dir_ / "timeseries.csv");

    marginals_ << "step,time";
    for (int l = 0; l < grid.width(); ++l) marginals_ << ",l" << l;
    marginals_ << '\n';
    snapshots_ << "step,time,trace,in_plane_total,dissipative_probability,"
                  "max_site_probability,symmetry_error,purity\n";
    series_ << "step,trace,in_plane_total,dissipative_probability,max_site_probability,"
               "symmetry_error\n";
  }

  void snapshot(const Snapshot& s) {
    const std::string name = heatmap_file_name(s.step);
    std::ofstream os = open_output(dir_ / name);
    os << "# step=" << s.step << ",time=" << format_number(s.time) << '\n';
    const GridSpec& g = s.field.grid;
    for (int h = 0; h < g.height(); ++h) {
      for (int l = 0; l < g.width(); ++l) {
        os << (l ? "," : "") << format_number(clamp01(s.field.at({l, h})));
      }
      os << '\n';
    }
    check_written(os, dir_ / name);
    heatmaps_.push_back(name);

    marginals_ << s.step << ',' << format_number(s.time);
    for (double m : s.column_marginal) marginals_ << ',' << format_number(clamp01(m));
    marginals_ << '\n';

    snapshots_ << s.step << ',' << format_number(s.time) << ',' << format_number(s.trace) << ','
               << format_number(s.in_plane_total) << ','
               << format_number(s.dissipative_probability) << ','
               << format_number(s.max_site_probability) << ','
               << format_number(s.symmetry_error) << ',' << format_number(s.purity) << '\n';
    check_written(snapshots_, dir_ / "snapshots.csv");
  }

  void sample(const SeriesSample& s) {
    series_ << s.step << ',' << format_number(s.trace) << ',' << format_number(s.in_plane_total)
            << ',' << format_number(s.dissipative_probability) << ','
            << format_number(s.max_site_probability) << ',' << format_number(s.symmetry_error)
            << '\n';
  }

  nlohmann::json close() {
    check_written(marginals_, dir_ / "marginals.csv");
    check_written(snapshots_, dir_ / "snapshots.csv");
    check_written(series_, dir_ / "timeseries.csv");
    marginals_.close();
    snapshots_.close();
    series_.close();
    nlohmann::json files = nlohmann::json::array();
    for (const auto& name : heatmaps_) files.push_back(file_entry(dir_, name));
    for (const char* name : {"marginals.csv", "snapshots.csv", "timeseries.csv"}) {
      files.push_back(file_entry(dir_, name));
    }
    return files;
  }

 private:
  fs::path dir_;
  std::ofstream marginals_;
  std::ofstream snapshots_;
  std::ofstream series_;
  std::vector<std::string> heatmaps_;
};

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream os = open_output(path);
  os << j.dump(2) << '\n';
  check_written(os, path);
}

nlohmann::json global_max_or_null(const Trajectory& t) {
  const bool any = std::any_of(t.snapshots.begin(), t.snapshots.end(),
                               [](const Snapshot& s) { return s.step > 0; });
  if (!any) return nullptr;
  return global_max_probability(t.snapshots);
}

}  // namespace

RunOutcome execute_run(const RunSettings& settings, std::ostream* progress) {
  const SimulationConfig& sim = settings.sim;
  sim.validate();
  const auto start = std::chrono::steady_clock::now();

  RunWriter writer(settings.out_dir, sim.grid);
  EvolutionHooks hooks;
  hooks.sample_stride = settings.timeseries_stride;
  hooks.on_snapshot = [&](const Snapshot& s) { writer.snapshot(s); };
  hooks.on_sample = [&](const SeriesSample& s) { writer.sample(s); };
  hooks.progress = progress;

  RunOutcome out;
  out.trajectory = evolve(sim, hooks);
  nlohmann::json files = writer.close();

  auto basis = std::make_shared<const BasisSet>(enumerate_basis(sim.grid, sim.method, sim.boundary));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.manifest = {{"engine", {{"name", "photon_lattice"}, {"version", kEngineVersion}}},
                  {"config", to_json(settings)},
                  {"warnings", sim.params.warnings()},
                  {"wall_clock_seconds", seconds},
                  {"global_max_probability", global_max_or_null(out.trajectory)},
                  {"basis", to_json(*basis)},
                  {"channels", to_json(build_channels(basis, sim.params))},
                  {"files", std::move(files)}};
  write_json(settings.out_dir / "manifest.json", out.manifest);
  return out;
}

CompareOutcome execute_compare(const CompareSettings& settings, std::ostream* progress) {
  const auto start = std::chrono::steady_clock::now();
  prepare_directory(settings.base.out_dir);

  CompareOutcome out;
  for (Scenario s : settings.scenarios) {
    if (progress) *progress << "scenario " << to_string(s) << '\n';
    out.runs.emplace_back(s, execute_run(scenario_settings(settings, s), progress));
  }

  const fs::path diff_path = settings.base.out_dir / "differences.csv";
  std::ofstream os = open_output(diff_path);
  const auto& runs = out.runs;
  os << "step,time";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i + 1; j < runs.size(); ++j) {
      os << ",max_dev_" << to_string(runs[i].first) << "_vs_" << to_string(runs[j].first);
    }
  }
  for (const auto& [s, run] : runs) os << ",dissipative_" << to_string(s);
  for (const auto& [s, run] : runs) os << ",in_plane_" << to_string(s);
  std::optional<std::size_t> ia;
  std::optional<std::size_t> ib;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].first == Scenario::OpenA) ia = i;
    if (runs[i].first == Scenario::OpenB) ib = i;
  }
  if (ia && ib) os << ",in_plane_open-a_minus_open-b";
  os << '\n';

  const std::size_t rows = runs.front().second.trajectory.snapshots.size();
  double global_max = 0.0;
  for (std::size_t k = 0; k < rows; ++k) {
    const Snapshot& ref = runs.front().second.trajectory.snapshots[k];
    os << ref.step << ',' << format_number(ref.time);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      for (std::size_t j = i + 1; j < runs.size(); ++j) {
        const auto& a = runs[i].second.trajectory.snapshots[k].field.values;
        const auto& b = runs[j].second.trajectory.snapshots[k].field.values;
        double dev = 0.0;
        for (std::size_t q = 0; q < a.size(); ++q) dev = std::max(dev, std::abs(a[q] - b[q]));
        os << ',' << format_number(dev);
      }
    }
    for (const auto& [s, run] : runs) {
      os << ',' << format_number(run.trajectory.snapshots[k].dissipative_probability);
    }
    for (const auto& [s, run] : runs) {
      os << ',' << format_number(run.trajectory.snapshots[k].in_plane_total);
    }
    if (ia && ib) {
      os << ','
         << format_number(runs[*ia].second.trajectory.snapshots[k].in_plane_total -
                          runs[*ib].second.trajectory.snapshots[k].in_plane_total);
    }
    os << '\n';
    if (ref.step > 0) {
      for (const auto& [s, run] : runs) {
        global_max = std::max(global_max, run.trajectory.snapshots[k].max_site_probability);
      }
    }
  }
  check_written(os, diff_path);
  os.close();

  nlohmann::json scenarios = nlohmann::json::array();
  for (const auto& [s, run] : runs) {
    scenarios.push_back({{"scenario", std::string(to_string(s))},
                         {"directory", std::string(to_string(s))},
                         {"global_max_probability", run.manifest["global_max_probability"]}});
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.manifest = {{"engine", {{"name", "photon_lattice"}, {"version", kEngineVersion}}},
                  {"config", to_json(settings.base)},
                  {"scenarios", std::move(scenarios)},
                  {"wall_clock_seconds", seconds},
                  {"global_max_probability", global_max},
                  {"files", nlohmann::json::array(
                                {file_entry(settings.base.out_dir, "differences.csv")})}};
  out.manifest["config"].erase("method");
  out.manifest["config"].erase("boundary");
  if (!settings.representation) out.manifest["config"]["repr"] = "auto";
  write_json(settings.base.out_dir / "manifest.json", out.manifest);
  return out;
}

}  // namespace photon_lattice
