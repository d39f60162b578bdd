#include "dsmb/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <omp.h>

#include "dsmb/errors.hpp"

namespace dsmb {

namespace {

int g_threads = 0;

cplx far_field_entry(std::span<const Point2> points, std::span<const double> weights,
                     double cos_t, double sin_t, double k)
{
  double re = 0.0, im = 0.0;
  for (std::size_t t = 0; t < points.size(); ++t) {
    const double phase = k * (cos_t * points[t].x + sin_t * points[t].y);
    re += weights[t] * std::cos(phase);
    im -= weights[t] * std::sin(phase);
  }
  return {re, im};
}

double indicator_entry(std::span<const cplx> data, std::span<const double> row_norms,
                       std::span<const double> cos_t, std::span<const double> sin_t,
                       std::span<const double> wavenumbers, Point2 p, IndicatorForm form)
{
  const std::size_t ndir = cos_t.size();
  double numer = 0.0, denom = 0.0;
  cplx total{0.0, 0.0};
  for (std::size_t j = 0; j < wavenumbers.size(); ++j) {
    if (row_norms[j] == 0.0)
      continue;
    const double k = wavenumbers[j];
    cplx inner{0.0, 0.0};
    double phi_norm2 = 0.0;
    for (std::size_t i = 0; i < ndir; ++i) {
      const double phase = k * (cos_t[i] * p.x + sin_t[i] * p.y);
      // u * conj(exp(-i phase)) = u * exp(+i phase)
      const cplx phi_conj{std::cos(phase), std::sin(phase)};
      inner += data[j * ndir + i] * phi_conj;
      phi_norm2 += std::norm(phi_conj);
    }
    total += inner;
    numer += std::abs(inner);
    denom += row_norms[j] * std::sqrt(phi_norm2);
  }
  if (form == IndicatorForm::coherent)
    numer = std::abs(total);
  // Rounding can push a perfect correlation a few ulp above 1.
  return std::min(numer / denom, 1.0);
}

void check_size(bool ok, const char* what)
{
  if (!ok)
    throw ContractError(std::string("kernel size mismatch: ") + what);
}

int threads_for(Exec exec) { return exec == Exec::serial ? 1 : (g_threads > 0 ? g_threads : omp_get_max_threads()); }

} // namespace

void set_thread_count(int threads) { g_threads = threads < 0 ? 0 : threads; }
int thread_count() { return threads_for(Exec::parallel); }

void far_field_kernel(std::span<const Point2> points, std::span<const double> weights,
                      std::span<const double> thetas, std::span<const double> wavenumbers,
                      std::span<cplx> out, Exec exec)
{
  check_size(points.size() == weights.size(), "points/weights");
  check_size(out.size() == thetas.size() * wavenumbers.size(), "far-field output");
  const std::ptrdiff_t ndir = static_cast<std::ptrdiff_t>(thetas.size());
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(out.size());

  if (exec == Exec::serial) {
    for (std::ptrdiff_t e = 0; e < total; ++e) {
      const double th = thetas[e % ndir];
      out[e] = far_field_entry(points, weights, std::cos(th), std::sin(th), wavenumbers[e / ndir]);
    }
    return;
  }
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads_for(exec))
  for (std::ptrdiff_t e = 0; e < total; ++e) {
    const double th = thetas[e % ndir];
    out[e] = far_field_entry(points, weights, std::cos(th), std::sin(th), wavenumbers[e / ndir]);
  }
}

void indicator_kernel(std::span<const cplx> data, std::span<const double> thetas,
                      std::span<const double> wavenumbers, std::span<const Point2> probes,
                      std::span<double> out, IndicatorForm form, Exec exec)
{
  const std::size_t ndir = thetas.size();
  check_size(data.size() == ndir * wavenumbers.size(), "indicator data");
  check_size(out.size() == probes.size(), "indicator output");

  std::vector<double> cos_t(ndir), sin_t(ndir), row_norms(wavenumbers.size());
  for (std::size_t i = 0; i < ndir; ++i) {
    cos_t[i] = std::cos(thetas[i]);
    sin_t[i] = std::sin(thetas[i]);
  }
  for (std::size_t j = 0; j < wavenumbers.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < ndir; ++i)
      s += std::norm(data[j * ndir + i]);
    row_norms[j] = std::sqrt(s);
  }

  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(probes.size());
  if (exec == Exec::serial) {
    for (std::ptrdiff_t p = 0; p < n; ++p)
      out[p] = indicator_entry(data, row_norms, cos_t, sin_t, wavenumbers, probes[p], form);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(threads_for(exec))
  for (std::ptrdiff_t p = 0; p < n; ++p)
    out[p] = indicator_entry(data, row_norms, cos_t, sin_t, wavenumbers, probes[p], form);
}

void operator_kernel(std::span<const Point2> points, std::span<const double> areas,
                     std::span<const double> basis, std::size_t basis_count,
                     std::span<const double> thetas, std::span<const double> wavenumbers,
                     std::span<cplx> out, Exec exec)
{
  const std::size_t ndir = thetas.size();
  const std::size_t npts = points.size();
  check_size(areas.size() == npts, "points/areas");
  check_size(basis.size() == npts * basis_count, "basis table");
  check_size(out.size() == ndir * wavenumbers.size() * basis_count, "operator output");

  auto row = [&](std::size_t r, std::vector<double>& acc) {
    const double k = wavenumbers[r / ndir];
    const double th = thetas[r % ndir];
    const double ct = std::cos(th), st = std::sin(th);
    std::fill(acc.begin(), acc.end(), 0.0);
    double* re = acc.data();
    double* im = acc.data() + basis_count;
    for (std::size_t t = 0; t < npts; ++t) {
      const double phase = k * (ct * points[t].x + st * points[t].y);
      const double c = std::cos(phase) * areas[t];
      const double s = -std::sin(phase) * areas[t];
      const double* q = basis.data() + t * basis_count;
      for (std::size_t b = 0; b < basis_count; ++b) {
        re[b] += c * q[b];
        im[b] += s * q[b];
      }
    }
    for (std::size_t b = 0; b < basis_count; ++b)
      out[r * basis_count + b] = {re[b], im[b]};
  };

  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(ndir * wavenumbers.size());
  if (exec == Exec::serial) {
    std::vector<double> acc(2 * basis_count);
    for (std::ptrdiff_t r = 0; r < rows; ++r)
      row(static_cast<std::size_t>(r), acc);
    return;
  }
#pragma omp parallel num_threads(threads_for(exec))
  {
    std::vector<double> acc(2 * basis_count);
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t r = 0; r < rows; ++r)
      row(static_cast<std::size_t>(r), acc);
  }
}

} // namespace dsmb
