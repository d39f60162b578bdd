// Serial vs OpenMP kernel timings.

#include <benchmark/benchmark.h>

#include "dsmb/dsm.hpp"
#include "dsmb/expansion.hpp"
#include "dsmb/kernels.hpp"

using namespace dsmb;

namespace {

struct Setup
{
  WeightedPoints src;
  Aperture ap = Aperture::builtin(1);
  std::vector<double> ks = wavenumber_range(1, 1, 20);
  std::vector<double> dsm_ks = wavenumber_range(1, 1, 3);
  std::vector<Point2> probes = SamplingGrid{}.points();
  BasisIndex basis{5, 2};
  std::vector<double> table;
  std::vector<double> areas;
  std::vector<cplx> data;

  Setup()
  {
    const Disc disc{{0, 0}, 0.9};
    const auto mesh = build_mesh(disc, 0.02);
    src = SourceSpec::example(2).discretize(mesh);
    table = basis_table(basis, disc, mesh.centroids());
    areas = mesh.areas();
    data.resize(ap.size() * dsm_ks.size());
    far_field_kernel(src.points, src.weights, ap.angles, dsm_ks, data, Exec::serial);
  }
};

const Setup& setup()
{
  static const Setup s;
  return s;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_far_field(benchmark::State& state)
{
  const auto& s = setup();
  std::vector<cplx> out(s.ap.size() * s.ks.size());
  for (auto _ : state) {
    far_field_kernel(s.src.points, s.src.weights, s.ap.angles, s.ks, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_indicator(benchmark::State& state)
{
  const auto& s = setup();
  std::vector<double> out(s.probes.size());
  for (auto _ : state) {
    indicator_kernel(s.data, s.ap.angles, s.dsm_ks, s.probes, out, IndicatorForm::coherent, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_operator(benchmark::State& state)
{
  const auto& s = setup();
  std::vector<cplx> out(s.ap.size() * s.ks.size() * s.basis.size());
  for (auto _ : state) {
    operator_kernel(s.src.points, s.areas, s.table, s.basis.size(), s.ap.angles, s.ks, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
}

} // namespace

// Arg 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_far_field)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_indicator)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_operator)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
