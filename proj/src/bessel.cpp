#include "dsmb/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dsmb/errors.hpp"

namespace dsmb {

namespace {

constexpr double kSeriesLimit = 12.0;

// sum_k (-1)^k (y/2)^{2k+n} / (k! (k+n)!)
double series(int n, double y)
{
  const double half = 0.5 * y;
  double term = 1.0;
  for (int i = 1; i <= n; ++i)
    term *= half / i;
  const double q = -half * half;
  double sum = term;
  double peak = std::abs(term);
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + n));
    sum += term;
    peak = std::max(peak, std::abs(term));
    if (std::abs(term) < 1e-18 * peak)
      break;
  }
  return sum;
}

double miller(int n, double y)
{
  // y > 0 here.
  const double big = std::max<double>(n, y);
  int start = 2 * ((static_cast<int>(big) + 20 + static_cast<int>(std::sqrt(60.0 * big))) / 2);
  double next = 0.0;
  double cur = 1e-30;
  double norm_sum = 0.0;
  double result = 0.0;
  const double two_over_y = 2.0 / y;
  for (int k = start; k > 0; --k) {
    const double prev = k * two_over_y * cur - next;
    next = cur;
    cur = prev;
    // cur is now J_{k-1}, next is J_k (unnormalised)
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm_sum *= 1e-250;
      result *= 1e-250;
    }
    if (k - 1 == n)
      result = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0)
      norm_sum += 2.0 * cur;
  }
  norm_sum += cur;
  return result / norm_sum;
}

} // namespace

double bessel_j(int n, double y)
{
  if (n < 0 || n > kMaxBesselOrder)
    throw DomainError("bessel_j: order " + std::to_string(n) + " outside [0, 64]");
  if (!std::isfinite(y) || std::abs(y) > kMaxBesselArgument)
    throw DomainError("bessel_j: argument " + std::to_string(y) + " outside [-200, 200]");

  const double sign = (y < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
  const double ay = std::abs(y);
  if (ay == 0.0)
    return n == 0 ? 1.0 : 0.0;
  if (ay <= kSeriesLimit)
    return sign * series(n, ay);
  return sign * miller(n, ay);
}

BesselZeroTable::BesselZeroTable(int max_m, int max_n)
    : max_m_(max_m), max_n_(max_n)
{
  if (max_m < 1 || max_n < 0 || max_n > kMaxBesselOrder)
    throw DomainError("BesselZeroTable: bad extents");
  zeros_.reserve(static_cast<std::size_t>(max_m) * (max_n + 1));
  constexpr double step = std::numbers::pi / 4.0;
  for (int n = 0; n <= max_n; ++n) {
    double a = n + 1.0;
    double fa = bessel_j(n, a);
    int found = 0;
    while (found < max_m) {
      const double b = a + step;
      if (b > kMaxBesselArgument)
        throw InternalError("BesselZeroTable: ran out of bracket range for n=" + std::to_string(n));
      const double fb = bessel_j(n, b);
      if ((fa < 0.0) != (fb < 0.0)) {
        double lo = a, hi = b, flo = fa;
        while (hi - lo > 1e-13) {
          const double mid = 0.5 * (lo + hi);
          const double fm = bessel_j(n, mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        zeros_.push_back(0.5 * (lo + hi));
        ++found;
      }
      a = b;
      fa = fb;
    }
  }
}

double BesselZeroTable::zero(int m, int n) const
{
  if (m < 1 || m > max_m_ || n < 0 || n > max_n_)
    throw DomainError("bessel zero (m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                      ") outside table");
  return zeros_[static_cast<std::size_t>(n) * max_m_ + (m - 1)];
}

const BesselZeroTable& default_zero_table()
{
  static const BesselZeroTable table(32, 32);
  return table;
}

double bessel_zero(int m, int n) { return default_zero_table().zero(m, n); }

} // namespace dsmb
