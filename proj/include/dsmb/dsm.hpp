#pragma once

#include <iosfwd>
#include <vector>

#include "dsmb/farfield.hpp"
#include "dsmb/geometry.hpp"

namespace dsmb {

/// Uniform lattice over [lo, hi]^2, both ends included.
struct SamplingGrid
{
  double lo = -4.0;
  double hi = 4.0;
  int count = 81; // points per axis

  /// Throws DomainError unless count >= 2 and hi > lo.
  void validate() const;
  double spacing() const { return (hi - lo) / (count - 1); }
  /// Row-major: index = iy * count + ix.
  Point2 point(int ix, int iy) const { return {lo + ix * spacing(), lo + iy * spacing()}; }
  std::vector<Point2> points() const;
};

struct IndicatorField
{
  SamplingGrid grid;
  std::vector<double> values; // aligned with grid.points()
  /// Raw maximum before normalisation (equals max_value() when not normalised).
  double raw_max = 0.0;

  double max_value() const;
  Point2 argmax() const;
};

struct IndicatorOptions
{
  IndicatorForm form = IndicatorForm::coherent;
  /// Divide the field by its maximum over the grid before thresholding.
  bool normalize = true;
};

IndicatorForm parse_indicator_form(const std::string& text);

/// Normalised multi-frequency correlation of the data with
/// Phi(xhat, x_p) = exp(-i k xhat . x_p); see IndicatorForm. Lies in [0, 1].
/// Wavenumbers with an all-zero data row are skipped; DomainError if every row
/// is zero.
double indicator(Point2 probe, const FarFieldData& data, IndicatorForm form = IndicatorForm::coherent);

IndicatorField indicator_field(const SamplingGrid& grid, const FarFieldData& data,
                               IndicatorOptions options = {}, Exec exec = Exec::parallel);

enum class DiscMode { origin, centroid };

DiscMode parse_disc_mode(const std::string& text);

/// origin: centre 0, radius max ||x_p|| over {I(x_p) >= gamma}.
/// centroid: indicator-weighted centroid of that set, radius the largest
/// distance from it. ThresholdError if the set is empty.
Disc estimate_disc(const IndicatorField& field, double gamma, DiscMode mode = DiscMode::origin);

/// "x, y, I" lines, 17 significant digits.
void write_indicator_csv(std::ostream& out, const IndicatorField& field);
/// Header "gamma, center_x, center_y, radius" and one row.
void write_disc_summary(std::ostream& out, double gamma, const Disc& disc);

} // namespace dsmb
