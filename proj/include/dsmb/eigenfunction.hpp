#pragma once

#include "dsmb/geometry.hpp"

namespace dsmb {

enum class Parity { cosine, sine };

const char* to_string(Parity p);

/// L2-normalised Dirichlet eigenfunction of a disc,
///   Q(x) = c_n J_n(q_mn r / R) cos(n theta) / (sqrt(pi) R J_{n+1}(q_mn))   (cosine)
///   Q(x) = c_n J_n(q_mn r / R) sin(n theta) / (sqrt(pi) R J_{n+1}(q_mn))   (sine)
/// in polar coordinates about the disc centre, c_0 = 1 and c_n = sqrt(2) for
/// n >= 1. The signed J_{n+1} is used.
class DiscEigenfunction
{
public:
  /// Throws DomainError for m < 1, n < 0, sine with n == 0, or radius <= 0.
  DiscEigenfunction(int m, int n, Parity parity, Disc disc);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  Parity parity() const noexcept { return parity_; }
  const Disc& disc() const noexcept { return disc_; }
  double normalization() const noexcept { return normalization_; }
  /// q_mn / R
  double wavenumber() const noexcept { return wavenumber_; }

  /// Zero outside the disc.
  double operator()(Point2 x) const;

private:
  int m_;
  int n_;
  Parity parity_;
  Disc disc_;
  double normalization_;
  double wavenumber_;
};

inline double eigenfunction_eval(const DiscEigenfunction& e, Point2 x) { return e(x); }

} // namespace dsmb
