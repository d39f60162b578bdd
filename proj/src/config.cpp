#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dsmb/errors.hpp"
#include "dsmb/pipeline.hpp"

namespace dsmb {

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d))
      throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("option " + key + ": '" + v + "' is not a number");
  }
}

long long to_integer(const std::string& key, const std::string& v)
{
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used != v.size())
      throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("option " + key + ": '" + v + "' is not an integer");
  }
}

std::size_t to_count(const std::string& key, const std::string& v)
{
  const long long i = to_integer(key, v);
  if (i < 0)
    throw ConfigError("option " + key + " must be non-negative");
  return static_cast<std::size_t>(i);
}

bool to_bool(const std::string& key, const std::string& v)
{
  if (v == "1" || v == "true" || v == "yes" || v == "on")
    return true;
  if (v == "0" || v == "false" || v == "no" || v == "off")
    return false;
  throw ConfigError("option " + key + ": '" + v + "' is not a boolean");
}

std::vector<double> split_numbers(const std::string& key, const std::string& v, char sep)
{
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, sep))
    out.push_back(to_double(key, trim(item)));
  return out;
}

// "a:step:b" or a comma-separated list.
std::vector<double> parse_wavenumbers(const std::string& key, const std::string& v)
{
  if (v.find(':') != std::string::npos) {
    const auto parts = split_numbers(key, v, ':');
    if (parts.size() != 3)
      throw ConfigError("option " + key + ": expected first:step:last");
    return wavenumber_range(parts[0], parts[1], parts[2]);
  }
  auto ks = split_numbers(key, v, ',');
  if (ks.empty())
    throw ConfigError("option " + key + ": empty wavenumber list");
  return ks;
}

} // namespace

SourceSpec ExperimentConfig::source() const
{
  return custom_source ? *custom_source : SourceSpec::example(example);
}

double ExperimentConfig::effective_gamma() const
{
  if (gamma)
    return *gamma;
  if (aperture.name == "G1")
    return 0.41;
  if (aperture.name == "G2")
    return 0.64;
  if (aperture.name == "G3")
    return 0.70;
  throw ConfigError("custom aperture needs an explicit gamma");
}

void ExperimentConfig::validate() const
{
  if (!custom_source && (example < 1 || example > 5))
    throw ConfigError("example must be 1..5");
  try {
    aperture.validate();
    grid.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  for (const auto* ks : {&dsm_wavenumbers, &bayes_wavenumbers}) {
    if (ks->empty())
      throw ConfigError("wavenumber list is empty");
    for (std::size_t j = 0; j < ks->size(); ++j)
      if (!((*ks)[j] > 0.0) || (j > 0 && !((*ks)[j] > (*ks)[j - 1])))
        throw ConfigError("wavenumbers must be positive and strictly increasing");
  }
  if (!disc_override) {
    const double g = effective_gamma();
    if (!(g >= 0.0 && g <= 1.0))
      throw ConfigError("gamma must lie in [0, 1]");
  } else if (!(disc_override->radius > 0.0)) {
    throw ConfigError("disc override radius must be positive");
  }
  BasisIndex check(M, N);
  prior.validate();
  if (!(sigma > 0.0))
    throw ConfigError("sigma must be positive");
  try {
    sampler.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (histogram_bins < 1)
    throw ConfigError("bins must be at least 1");
  if (!(noise_level >= 0.0))
    throw ConfigError("noise level must be non-negative");
  if (!(data_mesh_h > 0.0) || !(operator_mesh_h > 0.0) || !(eval_mesh_h > 0.0))
    throw ConfigError("mesh sizes must be positive");
  if (field_grid_points < 2)
    throw ConfigError("field grid needs at least 2 points per axis");
  if (threads < 0)
    throw ConfigError("threads must be non-negative");
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value)
{
  const std::string key = trim(raw_key);
  const std::string v = trim(raw_value);
  if (key == "example") {
    std::string s = v;
    if (s.rfind("ex", 0) == 0)
      s = s.substr(2);
    const long long e = to_integer(key, s);
    if (e < 1 || e > 5)
      throw ConfigError("example must be 1..5");
    cfg.example = static_cast<int>(e);
  } else if (key == "aperture") {
    cfg.aperture = Aperture::parse(v);
  } else if (key == "gamma") {
    cfg.gamma = to_double(key, v);
  } else if (key == "disc-override") {
    const auto p = split_numbers(key, v, ',');
    if (p.size() != 3 || !(p[2] > 0.0))
      throw ConfigError("disc-override expects cx,cy,R with R > 0");
    cfg.disc_override = Disc{{p[0], p[1]}, p[2]};
  } else if (key == "disc-mode") {
    cfg.disc_mode = parse_disc_mode(v);
  } else if (key == "indicator-form") {
    cfg.indicator.form = parse_indicator_form(v);
  } else if (key == "indicator-normalize") {
    cfg.indicator.normalize = to_bool(key, v);
  } else if (key == "grid-lo") {
    cfg.grid.lo = to_double(key, v);
  } else if (key == "grid-hi") {
    cfg.grid.hi = to_double(key, v);
  } else if (key == "grid-count") {
    cfg.grid.count = static_cast<int>(to_integer(key, v));
  } else if (key == "dsm-k") {
    cfg.dsm_wavenumbers = parse_wavenumbers(key, v);
  } else if (key == "bayes-k") {
    cfg.bayes_wavenumbers = parse_wavenumbers(key, v);
  } else if (key == "M") {
    cfg.M = static_cast<int>(to_integer(key, v));
  } else if (key == "N") {
    cfg.N = static_cast<int>(to_integer(key, v));
  } else if (key == "prior-var") {
    cfg.prior.variance = to_double(key, v);
  } else if (key == "sigma") {
    cfg.sigma = to_double(key, v);
  } else if (key == "beta") {
    cfg.sampler.beta = to_double(key, v);
  } else if (key == "steps") {
    cfg.sampler.total_steps = to_count(key, v);
  } else if (key == "burn-in") {
    cfg.sampler.burn_in = to_count(key, v);
  } else if (key == "thin") {
    cfg.sampler.thin = to_count(key, v);
  } else if (key == "seed") {
    cfg.sampler.seed = static_cast<std::uint64_t>(to_count(key, v));
  } else if (key == "proposal") {
    cfg.sampler.proposal = parse_proposal_scale(v);
  } else if (key == "literal-proposal") {
    cfg.sampler.proposal = to_bool(key, v) ? ProposalScale::literal : ProposalScale::prior;
  } else if (key == "noise-mode") {
    cfg.noise_mode = parse_noise_mode(v);
  } else if (key == "noise-level") {
    cfg.noise_level = to_double(key, v);
  } else if (key == "mesh-h") {
    cfg.data_mesh_h = to_double(key, v);
  } else if (key == "operator-mesh-h") {
    cfg.operator_mesh_h = to_double(key, v);
  } else if (key == "eval-mesh-h") {
    cfg.eval_mesh_h = to_double(key, v);
  } else if (key == "bins") {
    cfg.histogram_bins = static_cast<int>(to_integer(key, v));
  } else if (key == "out") {
    cfg.output_dir = v;
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(to_integer(key, v));
  } else {
    throw ConfigError("unknown option '" + key + "'");
  }
}

void load_config_file(ExperimentConfig& cfg, const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

} // namespace dsmb
