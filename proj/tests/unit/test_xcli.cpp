#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qsnn/mnist/idx.hpp"
#include "qsnn/xcli/config.hpp"
#include "qsnn/xcli/experiments.hpp"
#include "qsnn/xcli/report.hpp"

using namespace qsnn;
using namespace qsnn::xcli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qsnn_xcli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig mnist_config() {
  auto cfg = defaults_for(Experiment::mnist);
  cfg.images = fs::path(QSNN_DATA_DIR) / "mnist" / "images.idx3-ubyte";
  cfg.labels = fs::path(QSNN_DATA_DIR) / "mnist" / "labels.idx1-ubyte";
  return cfg;
}

}  // namespace

TEST_SUITE("xcli") {

TEST_CASE("experiment names") {
  CHECK(parse_experiment("fig7a") == Experiment::fig7);
  CHECK(parse_experiment("fig7b") == Experiment::fig7);
  CHECK(parse_experiment("appendixA") == Experiment::appendix_a);
  CHECK(parse_experiment("appendix-a") == Experiment::appendix_a);
  CHECK(parse_experiment("quip-single") == Experiment::quip_single);
  CHECK_THROWS_AS(parse_experiment("fig9"), InvalidArgument);
}

TEST_CASE("defaults and validation") {
  const auto f7 = defaults_for(Experiment::fig7);
  CHECK(f7.m_values == std::vector<int>{4, 6, 8, 10});
  CHECK(f7.trials == 1000);
  const auto f8 = defaults_for(Experiment::fig8);
  CHECK(f8.q_values.back() == 11);

  auto bad = f7;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = f7;
  bad.m_values = {1};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = f8;
  bad.q_values = {1, 4};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("settings and config files") {
  auto cfg = defaults_for(Experiment::fig7);
  apply_setting(cfg, "m", "4,8");
  apply_setting(cfg, "trials", "12");
  apply_setting(cfg, "mode", "circuit");
  CHECK(cfg.m_values == std::vector<int>{4, 8});
  CHECK(cfg.trials == 12);
  CHECK(cfg.mode == quip::Mode::circuit);
  CHECK_THROWS_AS(apply_setting(cfg, "nonsense", "1"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(cfg, "trials", "many"), InvalidArgument);
  CHECK(parse_double_list("1, 2.5,-3") == std::vector<double>{1, 2.5, -3});
  CHECK_THROWS_AS(parse_int_list("1,,2"), InvalidArgument);

  TempDir dir;
  std::ofstream(dir.path / "run.cfg") << "# comment\nseed = 42\n\nq = 1,3\n";
  apply_config_file(cfg, dir.path / "run.cfg");
  CHECK(cfg.seed == 42);
  CHECK(cfg.q_values == std::vector<int>{1, 3});
  std::ofstream(dir.path / "bad.cfg") << "seed 42\n";
  CHECK_THROWS_AS(apply_config_file(cfg, dir.path / "bad.cfg"), InvalidArgument);
  CHECK(cfg.to_json()["seed"] == 42);
}

TEST_CASE("seed comes from the environment by default") {
  ::setenv(kSeedVariable, "1234", 1);
  CHECK(defaults_for(Experiment::fig8).seed == 1234);
  ::unsetenv(kSeedVariable);
  CHECK(defaults_for(Experiment::fig8).seed == 0);
}

TEST_CASE("fig7 report") {
  auto cfg = defaults_for(Experiment::fig7);
  cfg.trials = 50;
  const auto rep = run_fig7(cfg);
  CHECK(rep.passed());
  CHECK(rep.rows.size() == cfg.trials * cfg.m_values.size());
  for (const auto& r : rep.rows) {
    CHECK(r["success_probability"].get<double>() >= 0.4052847345693511 - 1e-9);
    CHECK(r["epsilon"].get<double>() <= r["bound"].get<double>() + 1e-12);
    // exactly representable phases are read without error
    if (r["delta_r"].get<double>() == 0.0) CHECK(r["epsilon"].get<double>() <= 1e-12);
  }
  CHECK(summary_consistent(rep.to_json()));
  CHECK(rep.curves.count("fig7a") == 1);
  CHECK(rep.curves.count("fig7b") == 1);
}

TEST_CASE("fig8 report") {
  auto cfg = defaults_for(Experiment::fig8);
  cfg.trials = 2001;
  const auto rep = run_fig8(cfg);
  CHECK(rep.passed());
  CHECK(rep.rows.size() == cfg.trials * cfg.q_values.size());
  for (const auto& r : rep.rows)
    if (r["q"] == 1) CHECK(r["p_q"].get<double>() == r["p"].get<double>());
  for (const auto& e : rep.summary["per_q"])
    if (e["q"] == 11) {
      CHECK(e["min_p_q"].get<double>() >= 0.997);
      CHECK(e["min_p_q"].get<double>() <= 0.999);
    }
  CHECK(summary_consistent(rep.to_json()));
}

TEST_CASE("appendix-a report") {
  auto cfg = defaults_for(Experiment::appendix_a);
  cfg.trials = 3;
  cfg.coverage_trials = 300;
  const auto rep = run_appendix_a(cfg);
  CHECK(rep.rows.size() == cfg.trials * cfg.gammas.size());
  const double slope = rep.summary["slope_log2_shots_vs_gamma"].get<double>();
  CHECK(slope >= 1.7);
  CHECK(slope <= 2.3);
  CHECK(summary_consistent(rep.to_json()));
}

TEST_CASE("quip-single examples") {
  auto cfg = defaults_for(Experiment::quip_single);
  cfg.q_values = {11};
  cfg.w = {3, 4};
  cfg.t = {4, 3};
  auto rep = quip_single(cfg);
  CHECK(rep.passed());
  const auto& row = rep.rows.front();
  CHECK(row["exact"].get<double>() == doctest::Approx(0.96));
  CHECK(row["epsilon"].get<double>() <= row["bound"].get<double>());
  CHECK(row["gate_count"]["grover_applications"] == 1023);

  cfg.w = {1, 2, 3};
  cfg.t = {1, 2, 3};
  rep = quip_single(cfg);
  CHECK(rep.rows.front()["estimate"].get<double>() == 1.0);
  CHECK(rep.rows.front()["epsilon"].get<double>() <= 1e-12);

  cfg.w = {1, 0};
  cfg.t = {0, 1};
  rep = quip_single(cfg);
  CHECK(rep.rows.front()["estimate"].get<double>() == 0.0);
  CHECK(rep.rows.front()["r_tilde"] == 256);
  CHECK(rep.passed());

  cfg.t = {-1, 0.2};
  CHECK_THROWS_AS(quip_single(cfg), quip::UnsignedConstraintError);
}

TEST_CASE("reports round trip and detect tampering") {
  TempDir dir;
  auto cfg = defaults_for(Experiment::fig7);
  cfg.trials = 20;
  cfg.seed = 5;
  const auto rep = run_fig7(cfg);
  write_report(rep, dir.path / "a");
  write_report(run_fig7(cfg), dir.path / "b");
  CHECK(slurp(dir.path / "a" / "curve_fig7a.csv") == slurp(dir.path / "b" / "curve_fig7a.csv"));
  auto ja = load_report_json(dir.path / "a" / "report.json");
  auto jb = load_report_json(dir.path / "b" / "report.json");
  CHECK(ja["rows"] == jb["rows"]);
  CHECK(ja["provenance"]["seed"] == 5);
  CHECK(ja["provenance"].contains("version"));
  CHECK(ja["config"]["trials"] == 20);
  CHECK(summary_consistent(ja));
  ja["rows"][0]["epsilon"] = 0.99;
  CHECK_FALSE(summary_consistent(ja));

  const auto header = slurp(dir.path / "a" / "curve_fig7b.csv");
  CHECK(header.rfind("exact", 0) == 0);
}

TEST_CASE("mnist run is reproducible and epochs are contiguous") {
  auto cfg = mnist_config();
  if (!fs::exists(cfg.images)) return;
  cfg.epochs = 3;
  cfg.quip_subset = 5;
  const auto a = run_mnist(cfg);
  const auto b = run_mnist(cfg);
  CHECK(a.rows == b.rows);
  REQUIRE(a.rows.size() == 3);
  for (std::size_t e = 0; e < 3; ++e) CHECK(a.rows[e]["epoch"] == e + 1);
  CHECK(summary_consistent(a.to_json()));

  cfg.images = "/nonexistent/images";
  CHECK_THROWS_AS(run_mnist(cfg), qsnn::mnist::IdxError);
}

}  // TEST_SUITE
