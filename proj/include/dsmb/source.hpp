#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dsmb/mesh.hpp"

namespace dsmb {

enum class SourceKind
{
  eigenmode3q11,    // 3 Q^1_11 on B(0, 0.9)
  paraboloid,       // 2 (0.81 - |x|^2) on B(0, 0.9)
  gaussian,         // 5 exp(-45 x1^2 - 30 x2^2)
  elliptic_quartic, // 15 x1 x2 (0.81 - x1^2 - (x2/1.2)^2) on the ellipse
  unit_disc,        // indicator of B(0, 0.9)
  custom,
};

/// Point sources y_T with weights f(y_T) |T|: the discretised source the
/// far-field kernels consume.
struct WeightedPoints
{
  std::vector<Point2> points;
  std::vector<double> weights;
};

/// Ground-truth source. Built-ins follow the five reference examples; custom
/// sources carry either a callable or per-triangle samples on their own mesh.
class SourceSpec
{
public:
  /// Example 1..5. Throws ConfigError otherwise.
  static SourceSpec example(int index);
  static SourceSpec custom(std::function<double(Point2)> fn, Region support, std::string name = "custom");
  /// `values[t]` is f at the centroid of triangle t.
  static SourceSpec custom_samples(TriangleMesh mesh, std::vector<double> values, std::string name = "custom");

  SourceKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  /// Region that contains the support (for the Gaussian: B(0, 1.5)).
  const Region& support() const noexcept { return support_; }

  /// Per-triangle payload of custom_samples(), or nullptr.
  const TriangleMesh* sample_mesh() const noexcept { return samples_ ? &samples_->mesh : nullptr; }

  double operator()(Point2 x) const;

  /// Midpoint discretisation on `mesh`. Sample-backed sources ignore `mesh`
  /// and use their own triangles.
  WeightedPoints discretize(const TriangleMesh& mesh) const;

private:
  struct Samples
  {
    TriangleMesh mesh;
    std::vector<double> values;
  };

  SourceKind kind_ = SourceKind::custom;
  std::string name_;
  Region support_ = Disc{};
  std::function<double(Point2)> fn_;
  std::shared_ptr<const Samples> samples_;
};

inline double evaluate_source(const SourceSpec& s, Point2 x) { return s(x); }

/// Convert a CLI example name/index ("1".."5" or "ex1".."ex5") to a SourceSpec.
SourceSpec source_from_name(const std::string& name);

} // namespace dsmb
