#pragma once

// Data-parallel inner loops of the pipeline. Each kernel has a serial
// reference path and an OpenMP path; both compute every output entry with
// the same accumulation order, so their results are bit-identical and
// independent of the thread count.

#include <complex>
#include <span>

#include "dsmb/geometry.hpp"

namespace dsmb {

using cplx = std::complex<double>;

enum class Exec { serial, parallel };

/// out[j * I + i] = sum_t w_t exp(-i k_j xhat_i . y_t),  xhat_i = (cos theta_i, sin theta_i).
void far_field_kernel(std::span<const Point2> points, std::span<const double> weights,
                      std::span<const double> thetas, std::span<const double> wavenumbers,
                      std::span<cplx> out, Exec exec = Exec::parallel);

/// How the per-wavenumber correlations are combined.
///   coherent:   |sum_j sum_i u_ij conj(Phi_ij)| / sum_j ||u_.j|| ||Phi_.j||
///   incoherent: sum_j |sum_i u_ij conj(Phi_ij)| / sum_j ||u_.j|| ||Phi_.j||
enum class IndicatorForm { coherent, incoherent };

/// Direct-sampling indicator at each probe point. `data[j * I + i]` is the
/// far field at direction i and wavenumber j. Wavenumbers whose data row is
/// identically zero contribute nothing; a probe with no contributing
/// wavenumber yields NaN (callers reject all-zero data beforehand).
void indicator_kernel(std::span<const cplx> data, std::span<const double> thetas,
                      std::span<const double> wavenumbers, std::span<const Point2> probes,
                      std::span<double> out, IndicatorForm form = IndicatorForm::coherent,
                      Exec exec = Exec::parallel);

/// Dense far-field operator of a function basis sampled at quadrature points.
/// `basis[t * P + c]` is basis function c at point t; `areas[t]` the weight.
/// out[row * P + c] with row = j * I + i.
void operator_kernel(std::span<const Point2> points, std::span<const double> areas,
                     std::span<const double> basis, std::size_t basis_count,
                     std::span<const double> thetas, std::span<const double> wavenumbers,
                     std::span<cplx> out, Exec exec = Exec::parallel);

/// Threads used by Exec::parallel (0 restores the OpenMP default).
void set_thread_count(int threads);
int thread_count();

} // namespace dsmb
