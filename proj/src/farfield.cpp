#include "dsmb/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dsmb/errors.hpp"
#include "dsmb/rng.hpp"

namespace dsmb {

void Aperture::validate() const
{
  if (angles.empty())
    throw DomainError("aperture has no directions");
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (!(angles[i] >= 0.0 && angles[i] < 2.0 * std::numbers::pi))
      throw DomainError("aperture angle outside [0, 2pi)");
    if (i > 0 && !(angles[i] > angles[i - 1]))
      throw DomainError("aperture angles must be strictly increasing");
  }
}

Aperture Aperture::builtin(int index)
{
  int count = 0;
  switch (index) {
  case 1: count = 52; break;
  case 2: count = 26; break;
  case 3: count = 13; break;
  default: throw ConfigError("unknown aperture G" + std::to_string(index));
  }
  Aperture a;
  a.name = "G" + std::to_string(index);
  a.angles.reserve(count);
  for (int i = 0; i < count; ++i)
    a.angles.push_back(i * std::numbers::pi / 26.0);
  return a;
}

Aperture Aperture::parse(const std::string& text)
{
  if (text == "G1" || text == "1" || text == "g1")
    return builtin(1);
  if (text == "G2" || text == "2" || text == "g2")
    return builtin(2);
  if (text == "G3" || text == "3" || text == "g3")
    return builtin(3);
  Aperture a;
  a.name = "custom";
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      a.angles.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad aperture '" + text + "'");
    }
  }
  try {
    a.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return a;
}

std::vector<double> wavenumber_range(double first, double step, double last)
{
  if (!(step > 0.0) || !(first > 0.0) || last < first)
    throw ConfigError("bad wavenumber range");
  std::vector<double> ks;
  for (int i = 0;; ++i) {
    const double k = first + i * step;
    if (k > last + 1e-9)
      break;
    ks.push_back(k);
  }
  return ks;
}

const char* to_string(NoiseTag tag) { return tag == NoiseTag::clean ? "clean" : "perturbed"; }

const char* to_string(NoiseMode mode)
{
  return mode == NoiseMode::deterministic ? "deterministic" : "random-uniform";
}

NoiseMode parse_noise_mode(const std::string& text)
{
  if (text == "deterministic")
    return NoiseMode::deterministic;
  if (text == "random-uniform")
    return NoiseMode::random_uniform;
  throw ConfigError("unknown noise mode '" + text + "'");
}

FarFieldData::FarFieldData(Aperture aperture, std::vector<double> wavenumbers, std::vector<cplx> values,
                           NoiseTag tag)
    : aperture_(std::move(aperture)), wavenumbers_(std::move(wavenumbers)), values_(std::move(values)),
      tag_(tag)
{
  if (values_.size() != aperture_.size() * wavenumbers_.size())
    throw ContractError("far-field matrix shape does not match its grids");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ContractError("far-field data contains non-finite entries");
}

FarFieldData FarFieldData::select_wavenumbers(const std::vector<double>& ks) const
{
  const std::size_t ndir = directions();
  std::vector<cplx> sub;
  sub.reserve(ndir * ks.size());
  for (double k : ks) {
    auto it = std::find_if(wavenumbers_.begin(), wavenumbers_.end(),
                           [k](double w) { return std::abs(w - k) < 1e-12; });
    if (it == wavenumbers_.end())
      throw ContractError("wavenumber " + std::to_string(k) + " not present in data");
    const std::size_t j = static_cast<std::size_t>(it - wavenumbers_.begin());
    sub.insert(sub.end(), values_.begin() + j * ndir, values_.begin() + (j + 1) * ndir);
  }
  return FarFieldData(aperture_, ks, std::move(sub), tag_);
}

cplx far_field(const WeightedPoints& source, double k, double theta)
{
  if (!(k > 0.0))
    throw DomainError("far_field: wavenumber must be positive");
  cplx out;
  const double th[1] = {theta};
  const double ks[1] = {k};
  far_field_kernel(source.points, source.weights, th, ks, std::span<cplx>(&out, 1), Exec::serial);
  return out;
}

cplx far_field(const SourceSpec& source, const TriangleMesh& mesh, double k, double theta)
{
  return far_field(source.discretize(mesh), k, theta);
}

FarFieldData generate_dataset(const WeightedPoints& source, const Aperture& aperture,
                              const std::vector<double>& wavenumbers, Exec exec)
{
  aperture.validate();
  if (wavenumbers.empty())
    throw DomainError("generate_dataset: no wavenumbers");
  for (double k : wavenumbers)
    if (!(k > 0.0))
      throw DomainError("far_field: wavenumber must be positive");
  std::vector<cplx> values(aperture.size() * wavenumbers.size());
  far_field_kernel(source.points, source.weights, aperture.angles, wavenumbers, values, exec);
  return FarFieldData(aperture, wavenumbers, std::move(values), NoiseTag::clean);
}

FarFieldData generate_dataset(const SourceSpec& source, const TriangleMesh& mesh,
                              const Aperture& aperture, const std::vector<double>& wavenumbers, Exec exec)
{
  return generate_dataset(source.discretize(mesh), aperture, wavenumbers, exec);
}

FarFieldData perturb(const FarFieldData& data, double level, NoiseMode mode, std::uint64_t seed)
{
  if (data.noise_tag() != NoiseTag::clean)
    throw StateError("far-field data is already perturbed");
  const std::size_t ndir = data.directions();
  std::vector<cplx> values = data.values();
  Rng rng(seed);
  for (std::size_t j = 0; j < data.frequencies(); ++j) {
    double max_re = -std::numeric_limits<double>::infinity();
    double max_im = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ndir; ++i) {
      max_re = std::max(max_re, data.at(i, j).real());
      max_im = std::max(max_im, data.at(i, j).imag());
    }
    const cplx shift = level * cplx{max_re, max_im};
    for (std::size_t i = 0; i < ndir; ++i) {
      const double scale = mode == NoiseMode::deterministic ? 1.0 : rng.uniform(-1.0, 1.0);
      values[j * ndir + i] += scale * shift;
    }
  }
  return FarFieldData(data.aperture(), data.wavenumbers(), std::move(values), NoiseTag::perturbed);
}

void write_farfield(std::ostream& out, const FarFieldData& data)
{
  out << "# farfield v1 I=" << data.directions() << " J=" << data.frequencies()
      << " noise=" << to_string(data.noise_tag()) << '\n';
  out.precision(17);
  for (std::size_t j = 0; j < data.frequencies(); ++j)
    for (std::size_t i = 0; i < data.directions(); ++i) {
      const cplx v = data.at(i, j);
      out << data.wavenumbers()[j] << ' ' << data.aperture().angles[i] << ' ' << v.real() << ' '
          << v.imag() << '\n';
    }
  if (!out)
    throw IoError("failed writing far-field data");
}

FarFieldData read_farfield(std::istream& in)
{
  std::string header;
  if (!std::getline(in, header))
    throw IoError("far-field file is empty");
  std::size_t ndir = 0, nfreq = 0;
  char tag_buf[32] = {};
  if (std::sscanf(header.c_str(), "# farfield v1 I=%zu J=%zu noise=%31s", &ndir, &nfreq, tag_buf) != 3)
    throw IoError("bad far-field header: " + header);
  if (ndir == 0 || nfreq == 0)
    throw ContractError("far-field header declares an empty grid");
  const std::string tag_str = tag_buf;
  NoiseTag tag;
  if (tag_str == "clean")
    tag = NoiseTag::clean;
  else if (tag_str == "perturbed")
    tag = NoiseTag::perturbed;
  else
    throw IoError("bad far-field noise tag '" + tag_str + "'");

  Aperture aperture;
  aperture.name = "file";
  std::vector<double> ks;
  std::vector<cplx> values;
  values.reserve(ndir * nfreq);
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream ls(line);
    double k, th, re, im;
    if (!(ls >> k >> th >> re >> im))
      throw IoError("bad far-field line: " + line);
    if (count >= ndir * nfreq)
      throw ContractError("far-field file has more entries than its header declares");
    const std::size_t i = count % ndir, j = count / ndir;
    if (i == 0)
      ks.push_back(k);
    else if (k != ks[j])
      throw ContractError("far-field file: wavenumber changes inside a block");
    if (j == 0)
      aperture.angles.push_back(th);
    else if (th != aperture.angles[i])
      throw ContractError("far-field file: direction grid differs between wavenumbers");
    values.emplace_back(re, im);
    ++count;
  }
  if (count != ndir * nfreq)
    throw ContractError("far-field file has " + std::to_string(count) + " entries, header declares " +
                        std::to_string(ndir * nfreq));
  for (std::size_t j = 1; j < ks.size(); ++j)
    if (!(ks[j] > ks[j - 1]))
      throw ContractError("far-field file: wavenumbers not sorted");
  aperture.validate();
  return FarFieldData(std::move(aperture), std::move(ks), std::move(values), tag);
}

} // namespace dsmb
