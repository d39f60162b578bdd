#include "dsmb/source.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dsmb/eigenfunction.hpp"
#include "dsmb/errors.hpp"

namespace dsmb {

namespace {

constexpr Disc kExampleDisc{{0.0, 0.0}, 0.9};

double paraboloid(Point2 x)
{
  const double r2 = x.x * x.x + x.y * x.y;
  return r2 <= 0.81 ? 2.0 * (0.81 - r2) : 0.0;
}

double gaussian(Point2 x) { return 5.0 * std::exp(-45.0 * x.x * x.x - 30.0 * x.y * x.y); }

double elliptic_quartic(Point2 x)
{
  const double s = x.x * x.x + (x.y / 1.2) * (x.y / 1.2);
  return s <= 0.81 ? 15.0 * x.x * x.y * (0.81 - s) : 0.0;
}

double unit_disc(Point2 x) { return x.x * x.x + x.y * x.y <= 0.81 ? 1.0 : 0.0; }

} // namespace

SourceSpec SourceSpec::example(int index)
{
  SourceSpec s;
  switch (index) {
  case 1: {
    const DiscEigenfunction q11(1, 1, Parity::cosine, kExampleDisc);
    s.kind_ = SourceKind::eigenmode3q11;
    s.fn_ = [q11](Point2 x) { return 3.0 * q11(x); };
    s.support_ = kExampleDisc;
    break;
  }
  case 2:
    s.kind_ = SourceKind::paraboloid;
    s.fn_ = paraboloid;
    s.support_ = kExampleDisc;
    break;
  case 3:
    // |f| < 1e-20 on |x| = 1.5
    s.kind_ = SourceKind::gaussian;
    s.fn_ = gaussian;
    s.support_ = Disc{{0.0, 0.0}, 1.5};
    break;
  case 4:
    s.kind_ = SourceKind::elliptic_quartic;
    s.fn_ = elliptic_quartic;
    s.support_ = Ellipse{{0.0, 0.0}, 0.9, 1.08};
    break;
  case 5:
    s.kind_ = SourceKind::unit_disc;
    s.fn_ = unit_disc;
    s.support_ = kExampleDisc;
    break;
  default:
    throw ConfigError("unknown example " + std::to_string(index) + " (expected 1..5)");
  }
  s.name_ = "ex" + std::to_string(index);
  return s;
}

SourceSpec SourceSpec::custom(std::function<double(Point2)> fn, Region support, std::string name)
{
  if (!fn)
    throw ConfigError("custom source has no callable payload");
  SourceSpec s;
  s.kind_ = SourceKind::custom;
  s.fn_ = std::move(fn);
  s.support_ = support;
  s.name_ = std::move(name);
  return s;
}

SourceSpec SourceSpec::custom_samples(TriangleMesh mesh, std::vector<double> values, std::string name)
{
  if (mesh.empty() || values.size() != mesh.size())
    throw ConfigError("custom samples: need one value per triangle");
  SourceSpec s;
  s.kind_ = SourceKind::custom;
  s.name_ = std::move(name);
  double r = 0.0;
  for (const auto& v : mesh.vertices())
    r = std::max(r, v.norm());
  s.support_ = Disc{{0.0, 0.0}, r};
  s.samples_ = std::make_shared<const Samples>(Samples{std::move(mesh), std::move(values)});
  return s;
}

double SourceSpec::operator()(Point2 x) const
{
  if (fn_)
    return fn_(x);
  if (samples_) {
    // Piecewise constant on the sample mesh.
    const auto& tris = samples_->mesh.triangles();
    const auto& v = samples_->mesh.vertices();
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const Point2 a = v[tris[t][0]], b = v[tris[t][1]], c = v[tris[t][2]];
      const double d1 = (b.x - a.x) * (x.y - a.y) - (b.y - a.y) * (x.x - a.x);
      const double d2 = (c.x - b.x) * (x.y - b.y) - (c.y - b.y) * (x.x - b.x);
      const double d3 = (a.x - c.x) * (x.y - c.y) - (a.y - c.y) * (x.x - c.x);
      if (d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0)
        return samples_->values[t];
    }
    return 0.0;
  }
  throw ConfigError("custom source has no callable payload");
}

WeightedPoints SourceSpec::discretize(const TriangleMesh& mesh) const
{
  WeightedPoints out;
  if (samples_) {
    out.points = samples_->mesh.centroids();
    out.weights.resize(out.points.size());
    for (std::size_t t = 0; t < out.points.size(); ++t)
      out.weights[t] = samples_->values[t] * samples_->mesh.areas()[t];
    return out;
  }
  if (!fn_)
    throw ConfigError("custom source has no callable payload");
  out.points = mesh.centroids();
  out.weights.resize(mesh.size());
  for (std::size_t t = 0; t < mesh.size(); ++t)
    out.weights[t] = fn_(out.points[t]) * mesh.areas()[t];
  return out;
}

SourceSpec source_from_name(const std::string& name)
{
  std::string s = name;
  if (s.rfind("ex", 0) == 0)
    s = s.substr(2);
  if (s.size() == 1 && s[0] >= '1' && s[0] <= '5')
    return SourceSpec::example(s[0] - '0');
  throw ConfigError("unknown example '" + name + "'");
}

} // namespace dsmb
