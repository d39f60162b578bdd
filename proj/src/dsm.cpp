#include "dsmb/dsm.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "dsmb/errors.hpp"

namespace dsmb {

namespace {

void require_nonzero(const FarFieldData& data)
{
  if (data.values().empty())
    throw DomainError("indicator: empty far-field data");
  const bool all_zero = std::all_of(data.values().begin(), data.values().end(),
                                    [](const cplx& v) { return v == cplx{0.0, 0.0}; });
  if (all_zero)
    throw DomainError("indicator undefined: far-field data is identically zero");
}

} // namespace

void SamplingGrid::validate() const
{
  if (count < 2 || !(hi > lo))
    throw DomainError("sampling grid needs count >= 2 and hi > lo");
}

std::vector<Point2> SamplingGrid::points() const
{
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(count) * count);
  for (int iy = 0; iy < count; ++iy)
    for (int ix = 0; ix < count; ++ix)
      pts.push_back(point(ix, iy));
  return pts;
}

double IndicatorField::max_value() const { return *std::max_element(values.begin(), values.end()); }

Point2 IndicatorField::argmax() const
{
  const auto idx = static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
  return grid.point(idx % grid.count, idx / grid.count);
}

IndicatorForm parse_indicator_form(const std::string& text)
{
  if (text == "coherent")
    return IndicatorForm::coherent;
  if (text == "incoherent")
    return IndicatorForm::incoherent;
  throw ConfigError("unknown indicator form '" + text + "'");
}

double indicator(Point2 probe, const FarFieldData& data, IndicatorForm form)
{
  require_nonzero(data);
  double out = 0.0;
  indicator_kernel(data.values(), data.aperture().angles, data.wavenumbers(),
                   std::span<const Point2>(&probe, 1), std::span<double>(&out, 1), form, Exec::serial);
  return out;
}

IndicatorField indicator_field(const SamplingGrid& grid, const FarFieldData& data, IndicatorOptions options,
                               Exec exec)
{
  grid.validate();
  require_nonzero(data);
  IndicatorField field{grid, {}, 0.0};
  const auto pts = grid.points();
  field.values.resize(pts.size());
  indicator_kernel(data.values(), data.aperture().angles, data.wavenumbers(), pts, field.values, options.form,
                   exec);
  field.raw_max = field.max_value();
  if (options.normalize && field.raw_max > 0.0)
    for (double& v : field.values)
      v /= field.raw_max;
  return field;
}

DiscMode parse_disc_mode(const std::string& text)
{
  if (text == "origin")
    return DiscMode::origin;
  if (text == "centroid")
    return DiscMode::centroid;
  throw ConfigError("unknown disc mode '" + text + "'");
}

Disc estimate_disc(const IndicatorField& field, double gamma, DiscMode mode)
{
  const auto pts = field.grid.points();
  std::vector<std::size_t> selected;
  for (std::size_t p = 0; p < pts.size(); ++p)
    if (field.values[p] >= gamma)
      selected.push_back(p);
  if (selected.empty()) {
    std::ostringstream msg;
    msg << "no sampling point reaches cutoff " << gamma << " (indicator max " << field.max_value() << ")";
    throw ThresholdError(msg.str());
  }

  Point2 center{0.0, 0.0};
  if (mode == DiscMode::centroid) {
    double wsum = 0.0;
    for (std::size_t p : selected) {
      center = center + field.values[p] * pts[p];
      wsum += field.values[p];
    }
    if (wsum > 0.0)
      center = (1.0 / wsum) * center;
  }
  double radius = 0.0;
  for (std::size_t p : selected)
    radius = std::max(radius, (pts[p] - center).norm());
  if (!(radius > 0.0))
    throw ThresholdError("cutoff selects only the disc centre; radius would be zero");
  return Disc{center, radius};
}

void write_indicator_csv(std::ostream& out, const IndicatorField& field)
{
  out.precision(17);
  const auto pts = field.grid.points();
  for (std::size_t p = 0; p < pts.size(); ++p)
    out << pts[p].x << ", " << pts[p].y << ", " << field.values[p] << '\n';
  if (!out)
    throw IoError("failed writing indicator field");
}

void write_disc_summary(std::ostream& out, double gamma, const Disc& disc)
{
  out.precision(17);
  out << "gamma, center_x, center_y, radius\n"
      << gamma << ", " << disc.center.x << ", " << disc.center.y << ", " << disc.radius << '\n';
  if (!out)
    throw IoError("failed writing disc summary");
}

} // namespace dsmb
