#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsmb/dsm.hpp"
#include "dsmb/errors.hpp"
#include "dsmb/mcmc.hpp"

namespace dsmb {

/// Every knob of one DSM -> Bayes experiment. Defaults reproduce the
/// reference setup (aperture G1, K1 = 1:1:3, K = 1:1:20, M = 5, N = 2, prior
/// variance 0.01, sigma 0.04, beta 0.001, 120000 steps, 20000 burn-in).
struct ExperimentConfig
{
  int example = 1;                      // 1..5; ignored when custom_source is set
  std::optional<SourceSpec> custom_source;
  Aperture aperture = Aperture::builtin(1);
  std::vector<double> dsm_wavenumbers = wavenumber_range(1.0, 1.0, 3.0);
  std::vector<double> bayes_wavenumbers = wavenumber_range(1.0, 1.0, 20.0);
  /// Defaults to 0.41 / 0.64 / 0.70 for G1 / G2 / G3; required otherwise.
  std::optional<double> gamma;
  std::optional<Disc> disc_override;
  DiscMode disc_mode = DiscMode::origin;
  IndicatorOptions indicator;
  SamplingGrid grid;

  int M = 5;
  int N = 2;
  PriorSpec prior;
  double sigma = 0.04;
  SamplerConfig sampler;
  int histogram_bins = 50;

  double noise_level = 0.03;
  NoiseMode noise_mode = NoiseMode::deterministic;

  double data_mesh_h = 0.01;
  double operator_mesh_h = 0.01;
  double eval_mesh_h = 0.01;
  int field_grid_points = 161;

  std::filesystem::path output_dir; // empty: keep everything in memory
  int threads = 0;                  // 0: OpenMP default

  SourceSpec source() const;
  double effective_gamma() const;
  /// ConfigError on any out-of-range value.
  void validate() const;
};

/// Sets one option by its CLI name ("example", "aperture", "gamma",
/// "disc-override", "seed", "steps", "burn-in", "beta", "sigma", "prior-var",
/// "M", "N", "noise-mode", "out", ...). ConfigError on unknown keys or values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat "key = value" file; '#' starts a comment.
void load_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

struct ManifestEntry
{
  std::string file;
  std::string sha256;
};

struct RunReport
{
  Disc disc;
  bool disc_from_dsm = true;
  double gamma = 0.0;
  double absolute_error = 0.0;
  double relative_error = 0.0;
  double acceptance_rate = 0.0;
  double wall_seconds = 0.0;
  CoefficientVector conditional_mean;
  std::vector<ManifestEntry> manifest;
};

/// Error raised inside a pipeline stage; keeps the original exit code.
class StageError : public Error
{
public:
  StageError(std::string stage, const Error& cause);
  const std::string& stage() const noexcept { return stage_; }
  int exit_code() const noexcept override { return code_; }

private:
  std::string stage_;
  int code_;
};

/// Intermediate products of a run, kept for inspection and artifact emission.
struct PipelineProducts
{
  FarFieldData data;
  std::optional<IndicatorField> field;
  std::optional<MarkovChain> chain;
  std::optional<PosteriorSummary> summary;
  TriangleMesh eval_mesh;
  std::vector<double> f_true;
  std::vector<double> f_be;
};

/// Simulate -> perturb -> DSM (unless overridden) -> operator -> pCN-MH -> CM
/// -> AE/RE -> artifacts (when output_dir is set). Deterministic given the seed.
RunReport run_pipeline(const ExperimentConfig& cfg, PipelineProducts* products = nullptr);

/// AE = sqrt(sum w (f - g)^2), RE = AE / sqrt(sum w f^2). DomainError when ||f|| = 0.
std::pair<double, double> error_metrics(std::span<const double> f_true, std::span<const double> f_be,
                                        std::span<const double> weights);

/// Clean + perturbed data for the union of the DSM and Bayes wavenumbers.
FarFieldData simulate(const ExperimentConfig& cfg);

/// One DSM pass thresholded at each gamma: (gamma, radius) rows.
std::vector<std::pair<double, double>> gamma_sweep(const ExperimentConfig& cfg, const std::vector<double>& gammas);
std::vector<std::pair<double, double>> gamma_sweep(const IndicatorField& field, DiscMode mode,
                                                   const std::vector<double>& gammas);

/// Writes the run's files into `dir` and returns the manifest (file name +
/// SHA-256), which is also written to manifest.json next to report.json.
std::vector<ManifestEntry> emit_artifacts(const RunReport& report, const PipelineProducts& products,
                                          const ExperimentConfig& cfg, const std::filesystem::path& dir);

/// Lowercase hex SHA-256 of a file. IoError if unreadable.
std::string sha256_file(const std::filesystem::path& path);

} // namespace dsmb
