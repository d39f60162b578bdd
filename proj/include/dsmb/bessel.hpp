#pragma once

#include <vector>

namespace dsmb {

inline constexpr int kMaxBesselOrder = 64;
inline constexpr double kMaxBesselArgument = 200.0;

/// Bessel function of the first kind J_n(y) for integer order 0 <= n <= 64
/// and |y| <= 200.
///
/// Power series for |y| <= 12; above that, Miller's backward recurrence
/// normalised with J_0 + 2(J_2 + J_4 + ...) = 1. Throws DomainError outside
/// the supported range or for non-finite y.
double bessel_j(int n, double y);

/// Positive zeros q_mn of J_n, m = 1..max_m, n = 0..max_n.
///
/// Built once by scanning J_n at step pi/4 from n + 1 for sign changes and
/// bisecting each bracket to 1e-13. Immutable afterwards.
class BesselZeroTable
{
public:
  BesselZeroTable(int max_m, int max_n);

  /// m is 1-based, n is 0-based. Throws DomainError out of range.
  double zero(int m, int n) const;

  int max_m() const noexcept { return max_m_; }
  int max_n() const noexcept { return max_n_; }

private:
  int max_m_;
  int max_n_;
  std::vector<double> zeros_; // row n, column m-1
};

/// q_mn from a shared 32 x 32 table (m <= 32, n <= 32).
double bessel_zero(int m, int n);

/// The process-wide table behind bessel_zero().
const BesselZeroTable& default_zero_table();

} // namespace dsmb
