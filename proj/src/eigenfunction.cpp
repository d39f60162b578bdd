#include "dsmb/eigenfunction.hpp"

#include <cmath>
#include <numbers>

#include "dsmb/bessel.hpp"
#include "dsmb/errors.hpp"

namespace dsmb {

const char* to_string(Parity p) { return p == Parity::cosine ? "cos" : "sin"; }

DiscEigenfunction::DiscEigenfunction(int m, int n, Parity parity, Disc disc)
    : m_(m), n_(n), parity_(parity), disc_(disc)
{
  if (m < 1 || n < 0)
    throw DomainError("eigenfunction index out of range");
  if (parity == Parity::sine && n == 0)
    throw DomainError("sine eigenfunction requires n >= 1");
  if (!(disc.radius > 0.0))
    throw DomainError("eigenfunction disc radius must be positive");
  const double q = bessel_zero(m, n);
  // sqrt(2) for n >= 1 makes the cos/sin pair orthonormal (int cos^2 = pi, not 2 pi).
  const double angular = n == 0 ? 1.0 : std::numbers::sqrt2;
  normalization_ = angular / (std::sqrt(std::numbers::pi) * disc.radius * bessel_j(n + 1, q));
  wavenumber_ = q / disc.radius;
}

double DiscEigenfunction::operator()(Point2 x) const
{
  const Point2 local = x - disc_.center;
  const double r = local.norm();
  if (r > disc_.radius)
    return 0.0;
  const double radial = bessel_j(n_, wavenumber_ * r);
  if (n_ == 0)
    return normalization_ * radial;
  const double theta = std::atan2(local.y, local.x);
  const double angular = parity_ == Parity::cosine ? std::cos(n_ * theta) : std::sin(n_ * theta);
  return normalization_ * radial * angular;
}

} // namespace dsmb
