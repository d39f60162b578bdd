// dsmb: command-line front end for the DSM -> Bayes source reconstruction.
//
//   dsmb run          full pipeline for one experiment
//   dsmb gamma-sweep  DSM radius as a function of the cutoff
//   dsmb simulate     synthetic far-field data only
//   dsmb dsm          indicator + disc from a far-field file
//   dsmb reconstruct  pCN-MH from a far-field file and a disc
//
// Exit codes: 0 success, 2 configuration error, 3 numerical/stage error, 4 I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "dsmb/pipeline.hpp"

namespace fs = std::filesystem;
using namespace dsmb;

namespace {

// CLI flag name -> setting key understood by apply_setting().
const std::vector<std::pair<std::string, std::string>> kExperimentFlags = {
    {"example", "built-in source 1..5"},
    {"aperture", "G1, G2, G3 or comma-separated angles"},
    {"gamma", "DSM cutoff"},
    {"disc-override", "cx,cy,R: skip the DSM and use this disc"},
    {"disc-mode", "origin | centroid"},
    {"indicator-form", "coherent | incoherent"},
    {"indicator-normalize", "divide the indicator by its grid maximum (true/false)"},
    {"grid-lo", "sampling square lower bound"},
    {"grid-hi", "sampling square upper bound"},
    {"grid-count", "sampling points per axis"},
    {"dsm-k", "DSM wavenumbers, first:step:last or list"},
    {"bayes-k", "Bayes wavenumbers, first:step:last or list"},
    {"M", "radial truncation"},
    {"N", "angular truncation"},
    {"prior-var", "prior variance per coefficient"},
    {"sigma", "likelihood noise level"},
    {"beta", "pCN step"},
    {"steps", "total chain length"},
    {"burn-in", "discarded leading samples"},
    {"thin", "keep every n-th sample"},
    {"seed", "random seed"},
    {"proposal", "literal | prior-scaled"},
    {"noise-mode", "deterministic | random-uniform"},
    {"noise-level", "relative perturbation level"},
    {"mesh-h", "data mesh size"},
    {"operator-mesh-h", "operator mesh size"},
    {"eval-mesh-h", "error-norm mesh size"},
    {"bins", "histogram bins"},
    {"out", "output directory"},
    {"threads", "worker threads (0 = all)"},
};

struct ExperimentOptions
{
  std::string config_file;
  bool literal_proposal = false;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  CLI::Option* literal_flag = nullptr;

  void attach(CLI::App* app, std::initializer_list<const char*> only = {})
  {
    app->add_option("--config", config_file, "key = value configuration file");
    for (const auto& [key, help] : kExperimentFlags) {
      if (only.size() > 0 &&
          std::find_if(only.begin(), only.end(), [&](const char* k) { return key == k; }) == only.end())
        continue;
      options[key] = app->add_option("--" + key, values[key], help);
    }
    if (options.count("proposal"))
      literal_flag = app->add_flag("--literal-proposal", literal_proposal, "W ~ N(0, I) (default)");
  }

  ExperimentConfig build() const
  {
    ExperimentConfig cfg;
    if (!config_file.empty())
      load_config_file(cfg, config_file);
    for (const auto& [key, opt] : options)
      if (opt->count() > 0)
        apply_setting(cfg, key, values.at(key));
    if (literal_flag && literal_flag->count() > 0)
      cfg.sampler.proposal = ProposalScale::literal;
    cfg.validate();
    return cfg;
  }
};

std::vector<double> parse_list(const std::string& text)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "'");
    }
  }
  return out;
}

FarFieldData load_farfield(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path);
  return read_farfield(in);
}

void ensure_dir(const fs::path& dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
}

template <class Writer>
void write_to(const fs::path& path, Writer&& writer)
{
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write " + path.string());
  writer(out);
  if (!out)
    throw IoError("failed writing " + path.string());
}

int cmd_run(const ExperimentOptions& opts)
{
  const auto cfg = opts.build();
  const auto report = run_pipeline(cfg);
  std::cout.precision(6);
  std::cout << "source     " << cfg.source().name() << "  aperture " << cfg.aperture.name << '\n'
            << "disc       center (" << report.disc.center.x << ", " << report.disc.center.y << ") radius "
            << report.disc.radius << (report.disc_from_dsm ? "  [dsm]" : "  [override]") << '\n'
            << "AE         " << report.absolute_error << '\n'
            << "RE         " << 100.0 * report.relative_error << " %\n"
            << "acceptance " << report.acceptance_rate << '\n'
            << "wall time  " << report.wall_seconds << " s\n";
  for (const auto& m : report.manifest)
    std::cout << "wrote      " << (cfg.output_dir / m.file).string() << "  " << m.sha256.substr(0, 16) << '\n';
  return 0;
}

int cmd_gamma_sweep(const ExperimentOptions& opts, const std::string& gammas)
{
  const auto cfg = opts.build();
  const auto rows = gamma_sweep(cfg, parse_list(gammas));
  auto print = [&](std::ostream& o) {
    o.precision(17);
    o << "gamma, radius\n";
    for (const auto& [g, r] : rows)
      o << g << ", " << r << '\n';
  };
  if (!cfg.output_dir.empty()) {
    ensure_dir(cfg.output_dir);
    write_to(cfg.output_dir / "gamma_sweep.csv", print);
  }
  print(std::cout);
  return 0;
}

int cmd_simulate(const ExperimentOptions& opts, const std::string& file)
{
  const auto cfg = opts.build();
  const auto data = simulate(cfg);
  if (file.empty() || file == "-")
    write_farfield(std::cout, data);
  else
    write_to(file, [&](std::ostream& o) { write_farfield(o, data); });
  return 0;
}

int cmd_dsm(const ExperimentOptions& opts, const std::string& data_file)
{
  const auto cfg = opts.build();
  auto data = load_farfield(data_file);
  if (opts.options.at("dsm-k")->count() > 0)
    data = data.select_wavenumbers(cfg.dsm_wavenumbers);
  const auto field = indicator_field(cfg.grid, data, cfg.indicator);
  const double gamma = cfg.gamma.value_or(0.5);
  const auto disc = estimate_disc(field, gamma, cfg.disc_mode);
  if (!cfg.output_dir.empty()) {
    ensure_dir(cfg.output_dir);
    write_to(cfg.output_dir / "indicator.csv", [&](std::ostream& o) { write_indicator_csv(o, field); });
    write_to(cfg.output_dir / "disc.csv", [&](std::ostream& o) { write_disc_summary(o, gamma, disc); });
  }
  write_disc_summary(std::cout, gamma, disc);
  return 0;
}

int cmd_reconstruct(const ExperimentOptions& opts, const std::string& data_file, const std::string& disc_text)
{
  const auto cfg = opts.build();
  const auto data = load_farfield(data_file);
  const auto d = parse_list(disc_text);
  if (d.size() != 3 || !(d[2] > 0.0))
    throw ConfigError("--disc expects cx,cy,R with R > 0");
  const Disc disc{{d[0], d[1]}, d[2]};
  std::vector<double> ks = data.wavenumbers();
  if (opts.options.at("bayes-k")->count() > 0)
    ks = cfg.bayes_wavenumbers;
  set_thread_count(cfg.threads);
  const int rings = static_cast<int>(std::ceil(disc.radius / cfg.operator_mesh_h));
  const auto mesh = build_mesh(disc, cfg.operator_mesh_h, {3.14159265358979323846 / (6.0 * rings)});
  const auto op = assemble_forward_operator(BasisIndex(cfg.M, cfg.N), disc, data.aperture(), ks, mesh);
  const LikelihoodSpec like(op, data, cfg.sigma);
  const auto chain = run_chain(like, cfg.prior, cfg.sampler);
  const auto summary = summarize(chain, cfg.histogram_bins);
  if (!cfg.output_dir.empty()) {
    ensure_dir(cfg.output_dir);
    write_to(cfg.output_dir / "chain.txt", [&](std::ostream& o) { write_chain(o, chain); });
    write_to(cfg.output_dir / "summary.txt", [&](std::ostream& o) { write_summary(o, summary, chain); });
    write_to(cfg.output_dir / "coefficients.txt",
             [&](std::ostream& o) { write_coefficients(o, summary.conditional_mean); });
  }
  write_summary(std::cout, summary, chain);
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Direct sampling + Bayesian reconstruction of acoustic sources from far-field data"};
  app.require_subcommand(1);

  ExperimentOptions run_opts, sweep_opts, sim_opts, dsm_opts, rec_opts;
  std::string gammas = "0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::string sim_file, dsm_data, rec_data, rec_disc;

  auto* run = app.add_subcommand("run", "full DSM -> Bayes pipeline");
  run_opts.attach(run);

  auto* sweep = app.add_subcommand("gamma-sweep", "DSM radius for a list of cutoffs");
  sweep_opts.attach(sweep);
  sweep->add_option("--gammas", gammas, "comma-separated cutoffs");

  auto* sim = app.add_subcommand("simulate", "write synthetic far-field data");
  sim_opts.attach(sim, {"example", "aperture", "dsm-k", "bayes-k", "noise-mode", "noise-level", "mesh-h", "seed",
                        "threads"});
  sim->add_option("--file,-o", sim_file, "output file ('-' for stdout)");

  auto* dsm = app.add_subcommand("dsm", "indicator field and disc from a far-field file");
  dsm_opts.attach(dsm, {"gamma", "disc-mode", "indicator-form", "indicator-normalize", "grid-lo", "grid-hi",
                        "grid-count", "dsm-k", "out", "threads"});
  dsm->add_option("--data", dsm_data, "far-field file")->required();

  auto* rec = app.add_subcommand("reconstruct", "pCN-MH from a far-field file and a disc");
  rec_opts.attach(rec, {"bayes-k", "M", "N", "prior-var", "sigma", "beta", "steps", "burn-in", "thin", "seed",
                        "proposal", "operator-mesh-h", "bins", "out", "threads"});
  rec->add_option("--data", rec_data, "far-field file")->required();
  rec->add_option("--disc", rec_disc, "cx,cy,R")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run)
      return cmd_run(run_opts);
    if (*sweep)
      return cmd_gamma_sweep(sweep_opts, gammas);
    if (*sim)
      return cmd_simulate(sim_opts, sim_file);
    if (*dsm)
      return cmd_dsm(dsm_opts, dsm_data);
    if (*rec)
      return cmd_reconstruct(rec_opts, rec_data, rec_disc);
  } catch (const Error& e) {
    std::cerr << "dsmb: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "dsmb: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
