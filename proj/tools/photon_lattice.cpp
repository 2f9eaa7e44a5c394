// Command-line front end: run, compare, verify.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime or numerical
// failure, 3 verification failure.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "photon_lattice/errors.hpp"
#include "photon_lattice/export.hpp"
#include "photon_lattice/run_config.hpp"
#include "photon_lattice/verify.hpp"

namespace pl = photon_lattice;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitVerify = 3;

struct SettingFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_setting_flags(CLI::App* cmd, SettingFlags& flags, bool compare) {
  cmd->add_option("--config", flags.config_path, "key = value settings file")
      ->check(CLI::ExistingFile);
  const std::map<std::string, std::string> keys = {
      {"grid", "lattice extents WxH"},
      {"hbar", "reduced Planck constant"},
      {"omega", "cavity frequency"},
      {"zeta", "hopping amplitude"},
      {"gamma", "escape rate per channel"},
      {"dt", "time step"},
      {"steps", "number of steps"},
      {"snapshots", "comma-separated snapshot steps"},
      {"repr", "full, block or pure"},
      {"out", "output directory"},
      {"timeseries-stride", "steps between time-series rows"},
      {"remove-phase", "drop the uniform omega phase (true/false)"},
  };
  for (const auto& [key, help] : keys) {
    cmd->add_option("--" + key, flags.values[key], help);
  }
  if (compare) {
    cmd->add_option("--scenarios", flags.values["scenarios"],
                    "comma-separated: closed, open-a, open-b");
  } else {
    cmd->add_option("--method", flags.values["method"], "a or b");
    cmd->add_option("--boundary", flags.values["boundary"], "closed or open");
  }
}

pl::KeyValues collect(const CLI::App* cmd, const SettingFlags& flags) {
  pl::KeyValues kv;
  if (!flags.config_path.empty()) kv = pl::load_config_file(flags.config_path);
  pl::KeyValues overrides;
  for (const auto& [key, value] : flags.values) {
    if (cmd->count("--" + key) > 0) overrides[key] = value;
  }
  return pl::merge(std::move(kv), overrides);
}

void apply_thread_setting() {
  const char* env = std::getenv("PHOTON_LATTICE_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    throw pl::ConfigError("PHOTON_LATTICE_THREADS", "expected a positive integer");
  }
  Eigen::setNbThreads(static_cast<int>(n));
}

void print_warnings(const pl::PhysicalParams& p) {
  for (const auto& w : p.warnings()) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-photon hopping on a 2D cavity lattice"};
  app.require_subcommand(1);

  SettingFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "simulate one configuration");
  add_setting_flags(run, run_flags, false);

  SettingFlags compare_flags;
  CLI::App* compare = app.add_subcommand("compare", "simulate several scenarios side by side");
  add_setting_flags(compare, compare_flags, true);

  std::string level = "fast";
  CLI::App* verify = app.add_subcommand("verify", "self-test against oracles and invariants");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    apply_thread_setting();
    if (*run) {
      const pl::RunSettings settings = pl::run_settings_from(collect(run, run_flags));
      print_warnings(settings.sim.params);
      const pl::RunOutcome out = pl::execute_run(settings, &std::cerr);
      std::cout << "wrote " << settings.out_dir.string() << " (global max probability "
                << out.manifest["global_max_probability"].dump() << ")\n";
    } else if (*compare) {
      const pl::CompareSettings settings =
          pl::compare_settings_from(collect(compare, compare_flags));
      print_warnings(settings.base.sim.params);
      const pl::CompareOutcome out = pl::execute_compare(settings, &std::cerr);
      std::cout << "wrote " << settings.base.out_dir.string() << " (global max probability "
                << out.manifest["global_max_probability"].dump() << ")\n";
    } else if (*verify) {
      const auto report = pl::run_verification(
          level == "full" ? pl::VerifyLevel::Full : pl::VerifyLevel::Fast, &std::cout);
      if (!report.passed()) {
        std::cerr << "verification failed\n";
        return kExitVerify;
      }
    }
  } catch (const pl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
