#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "photon_lattice/export.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("photon_lattice_cli_" + std::string(
                ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args) {
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(PHOTON_LATTICE_CLI) + " " + args + " >" +
                            (dir_ / "stdout.txt").string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    Result r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream is(err);
    std::ostringstream ss;
    ss << is.rdbuf();
    r.err = ss.str();
    return r;
  }

  static std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream is(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(is, line)) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      rows.push_back(cells);
    }
    return rows;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, RunWritesFileContract) {
  const fs::path out = dir_ / "run";
  const Result r = run("run --grid 9x9 --method b --boundary open --steps 1000 --snapshots "
                       "300,400,500,750,1000 --out " + out.string());
  ASSERT_EQ(r.status, 0) << r.err;
  for (int s : {300, 400, 500, 750, 1000}) {
    EXPECT_TRUE(fs::exists(out / ("heatmap_step" + std::to_string(s) + ".csv")));
  }
  const auto heat = read_csv(out / "heatmap_step300.csv");
  ASSERT_EQ(heat.size(), 10u);
  EXPECT_EQ(heat[0][0].rfind("# step=300", 0), 0u);
  for (std::size_t k = 1; k < heat.size(); ++k) EXPECT_EQ(heat[k].size(), 9u);

  const auto marg = read_csv(out / "marginals.csv");
  ASSERT_EQ(marg.size(), 6u);
  EXPECT_EQ(marg[0].size(), 11u);
  const auto series = read_csv(out / "timeseries.csv");
  EXPECT_EQ(series.size(), 1u + 101u);

  std::ifstream is(out / "manifest.json");
  const auto manifest = nlohmann::json::parse(is);
  EXPECT_EQ(manifest["config"]["grid"], "9x9");
  EXPECT_EQ(manifest["basis"]["dimension"], 81 + 36);
  EXPECT_EQ(manifest["channels"].size(), 36u);
  EXPECT_EQ(manifest["files"].size(), 8u);
  for (const auto& f : manifest["files"]) {
    EXPECT_EQ(f["sha256"], photon_lattice::sha256_file(out / f["name"].get<std::string>()));
    EXPECT_EQ(f["bytes"], fs::file_size(out / f["name"].get<std::string>()));
  }
  EXPECT_TRUE(manifest["global_max_probability"].is_number());
}

TEST_F(Cli, ClosedTraceIsConstant) {
  const fs::path out = dir_ / "closed";
  ASSERT_EQ(run("run --grid 15x15 --boundary closed --steps 2000 --snapshots 1000,2000 --out " +
                out.string()).status,
            0);
  const auto series = read_csv(out / "timeseries.csv");
  ASSERT_EQ(series[0][1], "trace");
  for (std::size_t k = 1; k < series.size(); ++k) {
    EXPECT_NEAR(std::stod(series[k][1]), 1.0, 1e-9);
  }
}

TEST_F(Cli, ConfigFileWithFlagOverride) {
  const fs::path cfg = dir_ / "run.cfg";
  std::ofstream(cfg) << "grid = 5x5\nboundary = open\nsteps = 20\nsnapshots = 10\n";
  const fs::path out = dir_ / "cfg";
  ASSERT_EQ(run("run --config " + cfg.string() + " --steps 30 --out " + out.string()).status, 0);
  std::ifstream is(out / "manifest.json");
  const auto manifest = nlohmann::json::parse(is);
  EXPECT_EQ(manifest["config"]["steps"], 30);
  EXPECT_EQ(manifest["config"]["repr"], "block");
}

TEST_F(Cli, InvalidConfigNamesField) {
  const Result r = run("run --grid 0x5 --out " + (dir_ / "x").string());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("grid"), std::string::npos) << r.err;

  const Result bad_key = run("run --config " + (dir_ / "missing.cfg").string());
  EXPECT_EQ(bad_key.status, 1);

  EXPECT_EQ(run("compare --scenarios closed --out " + (dir_ / "y").string()).status, 1);
  EXPECT_EQ(run("frobnicate").status, 1);
}

TEST_F(Cli, UnwritableOutput) {
  const fs::path blocker = dir_ / "file";
  std::ofstream(blocker) << "x";
  const Result r = run("run --grid 3x3 --steps 10 --snapshots 10 --out " + (blocker / "sub").string());
  EXPECT_EQ(r.status, 2) << r.err;
}

TEST_F(Cli, CompareWritesDifferences) {
  const fs::path out = dir_ / "cmp";
  const Result r = run("compare --grid 21x21 --steps 600 --snapshots 100,300,600 --scenarios "
                       "closed,open-a,open-b --out " + out.string());
  ASSERT_EQ(r.status, 0) << r.err;
  for (const char* s : {"closed", "open-a", "open-b"}) {
    EXPECT_TRUE(fs::exists(out / s / "manifest.json"));
  }
  const auto diff = read_csv(out / "differences.csv");
  ASSERT_EQ(diff.size(), 4u);
  const auto& head = diff[0];
  auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(head.begin(), head.end(), name) - head.begin());
  };
  ASSERT_LT(col("max_dev_closed_vs_open-a"), head.size());
  ASSERT_LT(col("in_plane_open-a_minus_open-b"), head.size());
  // 21x21 from the center: 10 sites to the edge, so step 100 is still pre-boundary.
  EXPECT_LE(std::stod(diff[1][col("max_dev_closed_vs_open-a")]), 1e-9);
  for (std::size_t k = 1; k < diff.size(); ++k) {
    EXPECT_GE(std::stod(diff[k][col("in_plane_open-a_minus_open-b")]), -1e-12);
  }
  std::ifstream is(out / "manifest.json");
  const auto manifest = nlohmann::json::parse(is);
  EXPECT_EQ(manifest["scenarios"].size(), 3u);
  EXPECT_EQ(manifest["config"]["repr"], "auto");
}

TEST_F(Cli, VerifyFast) {
  EXPECT_EQ(run("verify --level fast").status, 0);
  EXPECT_EQ(run("verify --level medium").status, 1);
}
