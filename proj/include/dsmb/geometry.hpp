#pragma once

#include <cmath>

namespace dsmb {

struct Point2
{
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;

  double norm() const { return std::hypot(x, y); }
};

/// Closed disc; radius > 0 is enforced by the factories that produce discs
/// (DSM estimation, config parsing, mesh building).
struct Disc
{
  Point2 center;
  double radius = 1.0;

  bool contains(Point2 p, double tol = 0.0) const { return (p - center).norm() <= radius + tol; }
};

/// Axis-aligned ellipse centred at `center` with semi-axes `a` (x) and `b` (y).
struct Ellipse
{
  Point2 center;
  double a = 1.0;
  double b = 1.0;
};

/// Axis-aligned square [lo, hi]^2.
struct Square
{
  double lo = -1.0;
  double hi = 1.0;
};

} // namespace dsmb
