#pragma once

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include "dsmb/geometry.hpp"

namespace dsmb {

using Region = std::variant<Disc, Ellipse, Square>;

double region_area(const Region& region);

/// Conforming triangulation with cached centroids and areas.
class TriangleMesh
{
public:
  TriangleMesh() = default;

  /// Validates indices, orients every triangle counter-clockwise and rejects
  /// zero-area triangles (DomainError).
  TriangleMesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles);

  const std::vector<Point2>& vertices() const noexcept { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const noexcept { return triangles_; }
  const std::vector<Point2>& centroids() const noexcept { return centroids_; }
  const std::vector<double>& areas() const noexcept { return areas_; }

  std::size_t size() const noexcept { return triangles_.size(); }
  bool empty() const noexcept { return triangles_.empty(); }
  double total_area() const;
  /// Longest edge.
  double mesh_size() const noexcept { return mesh_size_; }

private:
  std::vector<Point2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Point2> centroids_;
  std::vector<double> areas_;
  double mesh_size_ = 0.0;
};

struct MeshOptions
{
  /// Rotates the ring vertices of disc/ellipse meshes. Two meshes of the same
  /// region with different offsets share no interior centroids.
  double angular_offset = 0.0;
};

/// Concentric-ring triangulation for discs and ellipses, criss-cross grid for
/// squares. Longest edge stays below 1.5 * h_target.
TriangleMesh build_mesh(const Region& region, double h_target, MeshOptions options = {});

/// Midpoint rule: sum_T g(y_T) |T|, accumulated in triangle order.
std::complex<double> quadrature(const TriangleMesh& mesh,
                                const std::function<std::complex<double>(Point2)>& g);
double quadrature_real(const TriangleMesh& mesh, const std::function<double(Point2)>& g);

/// Plain-text mesh format: "V T" header, V lines "x y", T lines "i j k" (0-based).
void write_mesh(std::ostream& out, const TriangleMesh& mesh);
TriangleMesh read_mesh(std::istream& in);

} // namespace dsmb
