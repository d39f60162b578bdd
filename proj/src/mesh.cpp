#include "dsmb/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "dsmb/errors.hpp"

namespace dsmb {

namespace {

double signed_area(Point2 a, Point2 b, Point2 c)
{
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

// Unit-disc ring mesh: centre vertex plus `rings` rings, ring i holding 6i
// vertices. Consecutive rings are stitched by an angular sweep.
void unit_ring_mesh(int rings, double offset, std::vector<Point2>& vertices,
                    std::vector<std::array<int, 3>>& triangles)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  vertices.push_back({0.0, 0.0});
  std::vector<int> ring_start{0};
  std::vector<int> ring_count{1};
  for (int i = 1; i <= rings; ++i) {
    const double r = static_cast<double>(i) / rings;
    const int count = 6 * i;
    ring_start.push_back(static_cast<int>(vertices.size()));
    ring_count.push_back(count);
    for (int j = 0; j < count; ++j) {
      const double phi = offset + two_pi * j / count;
      vertices.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
  }

  for (int j = 0; j < 6 && rings > 0; ++j)
    triangles.push_back({0, ring_start[1] + j, ring_start[1] + (j + 1) % 6});

  for (int i = 2; i <= rings; ++i) {
    const int in0 = ring_start[i - 1], nin = ring_count[i - 1];
    const int out0 = ring_start[i], nout = ring_count[i];
    int a = 0, b = 0;
    while (a < nin || b < nout) {
      // Advance the side whose new diagonal is shorter.
      bool advance_out = a >= nin;
      if (b < nout && a < nin) {
        const double d_out = (vertices[in0 + a] - vertices[out0 + (b + 1) % nout]).norm();
        const double d_in = (vertices[in0 + (a + 1) % nin] - vertices[out0 + b]).norm();
        advance_out = d_out <= d_in;
      }
      if (advance_out) {
        triangles.push_back({in0 + a % nin, out0 + b, out0 + (b + 1) % nout});
        ++b;
      } else {
        triangles.push_back({in0 + a, out0 + b % nout, in0 + (a + 1) % nin});
        ++a;
      }
    }
  }
}

TriangleMesh ellipse_mesh(Point2 center, double a, double b, double h, double offset)
{
  if (!(a > 0.0) || !(b > 0.0))
    throw DomainError("build_mesh: non-positive radius");
  const int rings = std::max(1, static_cast<int>(std::ceil(std::max(a, b) / h)));
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  unit_ring_mesh(rings, offset, vertices, triangles);
  for (auto& v : vertices)
    v = {center.x + a * v.x, center.y + b * v.y};
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh square_mesh(const Square& sq, double h)
{
  const double side = sq.hi - sq.lo;
  if (!(side > 0.0))
    throw DomainError("build_mesh: empty square");
  // Diagonals are sqrt(2) * spacing, so keep spacing <= h.
  const int cells = std::max(1, static_cast<int>(std::ceil(side / h)));
  const double step = side / cells;
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  for (int j = 0; j <= cells; ++j)
    for (int i = 0; i <= cells; ++i)
      vertices.push_back({sq.lo + i * step, sq.lo + j * step});
  auto id = [cells](int i, int j) { return j * (cells + 1) + i; };
  for (int j = 0; j < cells; ++j)
    for (int i = 0; i < cells; ++i) {
      if ((i + j) % 2 == 0) {
        triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      } else {
        triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
        triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
      }
    }
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

} // namespace

double region_area(const Region& region)
{
  return std::visit(
      [](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Disc>)
          return std::numbers::pi * r.radius * r.radius;
        else if constexpr (std::is_same_v<T, Ellipse>)
          return std::numbers::pi * r.a * r.b;
        else
          return (r.hi - r.lo) * (r.hi - r.lo);
      },
      region);
}

TriangleMesh::TriangleMesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles))
{
  const int nv = static_cast<int>(vertices_.size());
  centroids_.reserve(triangles_.size());
  areas_.reserve(triangles_.size());
  for (auto& t : triangles_) {
    for (int idx : t)
      if (idx < 0 || idx >= nv)
        throw DomainError("mesh: vertex index " + std::to_string(idx) + " out of range");
    const Point2 a = vertices_[t[0]], b = vertices_[t[1]], c = vertices_[t[2]];
    double area = signed_area(a, b, c);
    if (area < 0.0) {
      std::swap(t[1], t[2]);
      area = -area;
    }
    if (!(area > 0.0))
      throw DomainError("mesh: degenerate triangle");
    areas_.push_back(area);
    centroids_.push_back({(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0});
    mesh_size_ = std::max({mesh_size_, (a - b).norm(), (b - c).norm(), (c - a).norm()});
  }
}

double TriangleMesh::total_area() const
{
  double sum = 0.0;
  for (double a : areas_)
    sum += a;
  return sum;
}

TriangleMesh build_mesh(const Region& region, double h_target, MeshOptions options)
{
  if (!(h_target > 0.0))
    throw DomainError("build_mesh: mesh size must be positive");
  return std::visit(
      [&](const auto& r) -> TriangleMesh {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Disc>) {
          if (!(r.radius > 0.0))
            throw DomainError("build_mesh: disc radius must be positive");
          return ellipse_mesh(r.center, r.radius, r.radius, h_target, options.angular_offset);
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return ellipse_mesh(r.center, r.a, r.b, h_target, options.angular_offset);
        } else {
          return square_mesh(r, h_target);
        }
      },
      region);
}

std::complex<double> quadrature(const TriangleMesh& mesh,
                                const std::function<std::complex<double>(Point2)>& g)
{
  std::complex<double> sum{0.0, 0.0};
  const auto& c = mesh.centroids();
  const auto& a = mesh.areas();
  for (std::size_t t = 0; t < mesh.size(); ++t)
    sum += g(c[t]) * a[t];
  return sum;
}

double quadrature_real(const TriangleMesh& mesh, const std::function<double(Point2)>& g)
{
  double sum = 0.0;
  const auto& c = mesh.centroids();
  const auto& a = mesh.areas();
  for (std::size_t t = 0; t < mesh.size(); ++t)
    sum += g(c[t]) * a[t];
  return sum;
}

void write_mesh(std::ostream& out, const TriangleMesh& mesh)
{
  out.precision(17);
  out << mesh.vertices().size() << ' ' << mesh.size() << '\n';
  for (const auto& v : mesh.vertices())
    out << v.x << ' ' << v.y << '\n';
  for (const auto& t : mesh.triangles())
    out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

TriangleMesh read_mesh(std::istream& in)
{
  std::size_t nv = 0, nt = 0;
  if (!(in >> nv >> nt))
    throw IoError("mesh: missing header");
  std::vector<Point2> vertices(nv);
  for (auto& v : vertices)
    if (!(in >> v.x >> v.y))
      throw IoError("mesh: truncated vertex list");
  std::vector<std::array<int, 3>> triangles(nt);
  for (auto& t : triangles)
    if (!(in >> t[0] >> t[1] >> t[2]))
      throw IoError("mesh: truncated triangle list");
  return TriangleMesh(std::move(vertices), std::move(triangles));
}

} // namespace dsmb
