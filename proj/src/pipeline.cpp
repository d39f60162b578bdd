#include "dsmb/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <openssl/evp.h>

#include "dsmb/errors.hpp"
#include "json.hpp"

namespace dsmb {

namespace fs = std::filesystem;

namespace {

double bounding_radius(const Region& region)
{
  return std::visit(
      [](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Disc>)
          return r.center.norm() + r.radius;
        else if constexpr (std::is_same_v<T, Ellipse>)
          return r.center.norm() + std::max(r.a, r.b);
        else
          return std::max(std::abs(r.lo), std::abs(r.hi)) * std::numbers::sqrt2;
      },
      region);
}

template <class F>
auto run_stage(const std::string& name, F&& body)
{
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

std::vector<double> merge_wavenumbers(std::vector<double> a, const std::vector<double>& b)
{
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }), a.end());
  return a;
}

std::ofstream open_output(const fs::path& path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot write " + path.string());
  return out;
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer)
{
  auto out = open_output(path);
  try {
    writer(out);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  out.close();
  if (!out)
    throw IoError("failed writing " + path.string());
}

nlohmann::json disc_json(const Disc& d)
{
  return {{"center_x", d.center.x}, {"center_y", d.center.y}, {"radius", d.radius}};
}

} // namespace

StageError::StageError(std::string stage, const Error& cause)
    : Error("stage " + stage + ": " + cause.what()), stage_(std::move(stage)), code_(cause.exit_code())
{}

std::pair<double, double> error_metrics(std::span<const double> f_true, std::span<const double> f_be,
                                        std::span<const double> weights)
{
  if (f_true.size() != f_be.size() || f_true.size() != weights.size())
    throw ContractError("error_metrics: grids differ");
  double diff2 = 0.0, norm2 = 0.0;
  for (std::size_t t = 0; t < f_true.size(); ++t) {
    const double d = f_true[t] - f_be[t];
    diff2 += weights[t] * d * d;
    norm2 += weights[t] * f_true[t] * f_true[t];
  }
  if (!(norm2 > 0.0))
    throw DomainError("relative error undefined: ||f|| = 0");
  const double ae = std::sqrt(diff2);
  return {ae, ae / std::sqrt(norm2)};
}

FarFieldData simulate(const ExperimentConfig& cfg)
{
  const auto source = cfg.source();
  const auto ks = merge_wavenumbers(cfg.dsm_wavenumbers, cfg.bayes_wavenumbers);
  const TriangleMesh* sample_mesh = source.sample_mesh();
  const TriangleMesh mesh = sample_mesh ? *sample_mesh : build_mesh(source.support(), cfg.data_mesh_h);
  const auto clean = generate_dataset(source, mesh, cfg.aperture, ks);
  return perturb(clean, cfg.noise_level, cfg.noise_mode, cfg.sampler.seed);
}

std::vector<std::pair<double, double>> gamma_sweep(const IndicatorField& field, DiscMode mode,
                                                   const std::vector<double>& gammas)
{
  std::vector<std::pair<double, double>> rows;
  rows.reserve(gammas.size());
  for (double g : gammas)
    rows.emplace_back(g, estimate_disc(field, g, mode).radius);
  return rows;
}

std::vector<std::pair<double, double>> gamma_sweep(const ExperimentConfig& cfg, const std::vector<double>& gammas)
{
  set_thread_count(cfg.threads);
  const auto data = run_stage("simulate", [&] { return simulate(cfg); });
  return run_stage("dsm", [&] {
    const auto field = indicator_field(cfg.grid, data.select_wavenumbers(cfg.dsm_wavenumbers), cfg.indicator);
    return gamma_sweep(field, cfg.disc_mode, gammas);
  });
}

RunReport run_pipeline(const ExperimentConfig& cfg, PipelineProducts* products)
{
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  set_thread_count(cfg.threads);

  PipelineProducts local;
  PipelineProducts& prod = products ? *products : local;
  RunReport report;

  try {
    prod.data = run_stage("simulate", [&] { return simulate(cfg); });

    if (cfg.disc_override) {
      report.disc = *cfg.disc_override;
      report.disc_from_dsm = false;
    } else {
      report.gamma = cfg.effective_gamma();
      report.disc = run_stage("dsm", [&] {
        prod.field = indicator_field(cfg.grid, prod.data.select_wavenumbers(cfg.dsm_wavenumbers), cfg.indicator);
        return estimate_disc(*prod.field, report.gamma, cfg.disc_mode);
      });
    }

    const BasisIndex basis(cfg.M, cfg.N);
    const auto op = run_stage("operator", [&] {
      const int rings = static_cast<int>(std::ceil(report.disc.radius / cfg.operator_mesh_h));
      const double offset = std::numbers::pi / (6.0 * std::max(rings, 1));
      const auto mesh = build_mesh(report.disc, cfg.operator_mesh_h, {offset});
      return assemble_forward_operator(basis, report.disc, cfg.aperture, cfg.bayes_wavenumbers, mesh);
    });

    run_stage("sample", [&] {
      const LikelihoodSpec like(op, prod.data, cfg.sigma);
      prod.chain = run_chain(like, cfg.prior, cfg.sampler);
      prod.summary = summarize(*prod.chain, cfg.histogram_bins);
      return 0;
    });
    report.conditional_mean = prod.summary->conditional_mean;
    report.acceptance_rate = prod.summary->acceptance_rate;

    run_stage("metrics", [&] {
      const auto source = cfg.source();
      const double reach = std::max(bounding_radius(source.support()), report.disc.center.norm() + report.disc.radius);
      prod.eval_mesh = build_mesh(Disc{{0.0, 0.0}, reach}, cfg.eval_mesh_h);
      const auto& pts = prod.eval_mesh.centroids();
      prod.f_true.resize(pts.size());
      for (std::size_t t = 0; t < pts.size(); ++t)
        prod.f_true[t] = source(pts[t]);
      prod.f_be = eval_f_be(report.conditional_mean, pts);
      std::tie(report.absolute_error, report.relative_error) =
          error_metrics(prod.f_true, prod.f_be, prod.eval_mesh.areas());
      return 0;
    });

    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!cfg.output_dir.empty())
      report.manifest = run_stage("emit", [&] { return emit_artifacts(report, prod, cfg, cfg.output_dir); });
  } catch (const StageError& e) {
    if (!cfg.output_dir.empty() && e.stage() != "emit") {
      std::error_code ec;
      fs::create_directories(cfg.output_dir, ec);
      std::ofstream out(cfg.output_dir / "report.json");
      if (out)
        out << nlohmann::json{{"status", "error"}, {"stage", e.stage()}, {"message", e.what()}}.dump(2) << '\n';
    }
    throw;
  }
  return report;
}

std::string sha256_file(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw InternalError("sha256: digest init failed");
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0)
      EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

std::vector<ManifestEntry> emit_artifacts(const RunReport& report, const PipelineProducts& prod,
                                          const ExperimentConfig& cfg, const fs::path& dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());

  std::vector<std::string> files;
  auto emit = [&](const std::string& name, auto&& writer) {
    write_file(dir / name, writer);
    files.push_back(name);
  };

  emit("farfield.txt", [&](std::ostream& o) { write_farfield(o, prod.data); });
  if (prod.field) {
    emit("indicator.csv", [&](std::ostream& o) { write_indicator_csv(o, *prod.field); });
    emit("disc.csv", [&](std::ostream& o) { write_disc_summary(o, report.gamma, report.disc); });
  }
  if (prod.chain) {
    emit("chain.txt", [&](std::ostream& o) { write_chain(o, *prod.chain); });
    emit("summary.txt", [&](std::ostream& o) { write_summary(o, *prod.summary, *prod.chain); });
  }
  emit("field.csv", [&](std::ostream& o) {
    const auto source = cfg.source();
    const double reach = std::max(bounding_radius(source.support()), report.disc.center.norm() + report.disc.radius);
    const int n = cfg.field_grid_points;
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        pts.push_back({-reach + 2.0 * reach * ix / (n - 1), -reach + 2.0 * reach * iy / (n - 1)});
    const auto fbe = eval_f_be(report.conditional_mean, pts);
    o.precision(17);
    o << "x, y, f_true, f_be\n";
    for (std::size_t p = 0; p < pts.size(); ++p)
      o << pts[p].x << ", " << pts[p].y << ", " << source(pts[p]) << ", " << fbe[p] << '\n';
  });

  std::vector<ManifestEntry> manifest;
  nlohmann::json jm = nlohmann::json::array();
  for (const auto& f : files) {
    manifest.push_back({f, sha256_file(dir / f)});
    jm.push_back({{"file", f}, {"sha256", manifest.back().sha256}});
  }
  write_file(dir / "manifest.json", [&](std::ostream& o) { o << jm.dump(2) << '\n'; });

  nlohmann::json cm = nlohmann::json::array();
  for (std::size_t c = 0; c < report.conditional_mean.values.size(); ++c) {
    const auto& t = report.conditional_mean.basis[c];
    cm.push_back({{"m", t.m}, {"n", t.n}, {"parity", to_string(t.parity)}, {"value", report.conditional_mean.values[c]}});
  }
  nlohmann::json j = {
      {"status", "ok"},
      {"source", cfg.source().name()},
      {"aperture", cfg.aperture.name},
      {"disc", disc_json(report.disc)},
      {"disc_source", report.disc_from_dsm ? "dsm" : "override"},
      {"gamma", report.gamma},
      {"absolute_error", report.absolute_error},
      {"relative_error", report.relative_error},
      {"acceptance_rate", report.acceptance_rate},
      {"wall_seconds", report.wall_seconds},
      {"threads", thread_count()},
      {"seed", cfg.sampler.seed},
      {"proposal", to_string(cfg.sampler.proposal)},
      {"conditional_mean", cm},
      {"manifest", jm},
  };
  write_file(dir / "report.json", [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  return manifest;
}

} // namespace dsmb
