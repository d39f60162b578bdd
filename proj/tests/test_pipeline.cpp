#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "dsmb/pipeline.hpp"

using namespace dsmb;
namespace fs = std::filesystem;

namespace {

ExperimentConfig quick_config(int example, int aperture)
{
  ExperimentConfig cfg;
  cfg.example = example;
  cfg.aperture = Aperture::builtin(aperture);
  cfg.bayes_wavenumbers = wavenumber_range(1, 1, 5);
  cfg.sampler.total_steps = 3000;
  cfg.sampler.burn_in = 1000;
  cfg.data_mesh_h = 0.03;
  cfg.operator_mesh_h = 0.04;
  cfg.eval_mesh_h = 0.04;
  cfg.field_grid_points = 21;
  return cfg;
}

struct TempDir
{
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("dsmb_test_" + tag + "_" + std::to_string(::getpid())))
  {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("error metrics")
{
  const std::vector<double> w{0.5, 0.25, 0.25};
  const std::vector<double> one{1, 1, 1}, zero{0, 0, 0}, two{2, 2, 2};
  auto [ae, re] = error_metrics(one, zero, w);
  CHECK(ae == doctest::Approx(1.0));
  CHECK(re == doctest::Approx(1.0));
  std::tie(ae, re) = error_metrics(one, one, w);
  CHECK(ae == 0.0);
  CHECK(re == 0.0);
  std::tie(ae, re) = error_metrics(two, one, w);
  CHECK(re == doctest::Approx(ae / 2.0));
  CHECK_THROWS_AS(error_metrics(zero, one, w), DomainError);
  CHECK_THROWS_AS(error_metrics(one, std::vector<double>{1.0}, w), ContractError);
}

TEST_CASE("settings and config files")
{
  ExperimentConfig cfg;
  apply_setting(cfg, "example", "ex3");
  apply_setting(cfg, "aperture", "G2");
  apply_setting(cfg, "bayes-k", "1:2:9");
  apply_setting(cfg, "dsm-k", "1,2");
  apply_setting(cfg, "disc-override", "0.1,0,1.2");
  apply_setting(cfg, "proposal", "prior");
  CHECK(cfg.example == 3);
  CHECK(cfg.aperture.size() == 26);
  CHECK(cfg.bayes_wavenumbers == std::vector<double>{1, 3, 5, 7, 9});
  CHECK(cfg.dsm_wavenumbers.size() == 2);
  CHECK(cfg.disc_override->radius == 1.2);
  CHECK(cfg.sampler.proposal == ProposalScale::prior);
  CHECK(cfg.effective_gamma() == 0.64);
  CHECK_THROWS_AS(apply_setting(cfg, "colour", "red"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "example", "7"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "sigma", "abc"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "disc-override", "0,0,-1"), ConfigError);

  ExperimentConfig g;
  CHECK(g.effective_gamma() == 0.41);
  g.aperture = Aperture::builtin(3);
  CHECK(g.effective_gamma() == 0.70);
  g.gamma = 0.5;
  CHECK(g.effective_gamma() == 0.5);
  g.sigma = -1;
  CHECK_THROWS_AS(g.validate(), ConfigError);

  TempDir dir("cfg");
  fs::create_directories(dir.path);
  {
    std::ofstream f(dir.path / "a.cfg");
    f << "# comment\nexample = 5\n\nsteps = 500 # trailing\nburn-in=100\n";
  }
  ExperimentConfig fc;
  load_config_file(fc, dir.path / "a.cfg");
  CHECK(fc.example == 5);
  CHECK(fc.sampler.total_steps == 500);
  CHECK(fc.sampler.burn_in == 100);
  {
    std::ofstream f(dir.path / "b.cfg");
    f << "example 5\n";
  }
  CHECK_THROWS_AS(load_config_file(fc, dir.path / "b.cfg"), ConfigError);
  CHECK_THROWS_AS(load_config_file(fc, dir.path / "missing.cfg"), IoError);
}

TEST_CASE("gamma sweep")
{
  auto cfg = quick_config(2, 1);
  cfg.data_mesh_h = 0.01;
  const auto rows = gamma_sweep(cfg, {0.0, 0.2, 0.41, 0.8, 0.95});
  CHECK(rows[0].second == doctest::Approx(4.0 * std::sqrt(2.0)));
  CHECK(rows[2].second == doctest::Approx(0.9055).epsilon(1e-4));
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].second <= rows[i - 1].second);
  CHECK_THROWS_AS(gamma_sweep(cfg, {1.5}), StageError);
}

TEST_CASE("pipeline runs deterministically and emits a manifest")
{
  TempDir a("run_a"), b("run_b");
  auto cfg = quick_config(2, 2);
  cfg.output_dir = a.path;
  cfg.threads = 1;
  PipelineProducts prod;
  const auto r1 = run_pipeline(cfg, &prod);
  CHECK(r1.disc_from_dsm);
  CHECK(r1.disc.radius == doctest::Approx(1.1180).epsilon(1e-3));
  CHECK(r1.relative_error < 1.0);
  CHECK(r1.acceptance_rate > 0.0);
  CHECK(r1.acceptance_rate < 1.0);
  CHECK(prod.chain->sample_count() == 2000);
  CHECK(r1.manifest.size() == 6);
  for (const char* f : {"farfield.txt", "indicator.csv", "disc.csv", "chain.txt", "summary.txt", "field.csv",
                        "manifest.json", "report.json"})
    CHECK(fs::exists(a.path / f));

  cfg.output_dir = b.path;
  cfg.threads = 3;
  const auto r2 = run_pipeline(cfg);
  CHECK(slurp(a.path / "manifest.json") == slurp(b.path / "manifest.json"));
  CHECK(r2.relative_error == r1.relative_error);

  cfg.sampler.seed = 2;
  cfg.output_dir.clear();
  CHECK(run_pipeline(cfg).conditional_mean.values != r1.conditional_mean.values);
}

TEST_CASE("disc override skips the DSM stage")
{
  TempDir dir("override");
  auto cfg = quick_config(1, 1);
  cfg.disc_override = Disc{{0, 0}, 0.9};
  cfg.output_dir = dir.path;
  const auto r = run_pipeline(cfg);
  CHECK_FALSE(r.disc_from_dsm);
  CHECK(r.disc.radius == 0.9);
  CHECK(r.manifest.size() == 4);
  CHECK_FALSE(fs::exists(dir.path / "indicator.csv"));
}

TEST_CASE("stage failures")
{
  TempDir dir("fail");
  auto cfg = quick_config(1, 1);
  cfg.custom_source = SourceSpec::custom([](Point2) { return 0.0; }, Disc{{0, 0}, 0.9}, "zero");
  cfg.output_dir = dir.path;
  try {
    run_pipeline(cfg);
    FAIL("expected a stage error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "dsm");
    CHECK(e.exit_code() == 3);
  }
  CHECK(slurp(dir.path / "report.json").find("\"stage\": \"dsm\"") != std::string::npos);

  auto high = quick_config(2, 1);
  high.gamma = 1.0 + 1e-9;
  CHECK_THROWS_AS(run_pipeline(high), ConfigError);

  TempDir blocker("blocker");
  { std::ofstream f(blocker.path); f << "x"; }
  auto io = quick_config(2, 3);
  io.output_dir = blocker.path / "sub";
  try {
    run_pipeline(io);
    FAIL("expected an I/O error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "emit");
    CHECK(e.exit_code() == 4);
    CHECK(std::string(e.what()).find("sub") != std::string::npos);
  }
}

TEST_CASE("sha256")
{
  TempDir dir("sha");
  fs::create_directories(dir.path);
  { std::ofstream f(dir.path / "abc"); f << "abc"; }
  CHECK(sha256_file(dir.path / "abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_THROWS_AS(sha256_file(dir.path / "none"), IoError);
}
