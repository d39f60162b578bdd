#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dsmb/bessel.hpp"
#include "dsmb/eigenfunction.hpp"
#include "dsmb/errors.hpp"
#include "dsmb/expansion.hpp"
#include "dsmb/mesh.hpp"
#include "oracles.hpp"

using namespace dsmb;

TEST_CASE("value at the disc centre")
{
  const Disc disc{{0, 0}, 0.9};
  DiscEigenfunction e(1, 0, Parity::cosine, disc);
  const double q = bessel_zero(1, 0);
  const double expected = 1.0 / (std::sqrt(std::numbers::pi) * 0.9 * std::abs(bessel_j(1, q)));
  CHECK(std::abs(e({0, 0})) == doctest::Approx(expected).epsilon(1e-12));
  // n >= 1 vanishes at the centre
  CHECK(DiscEigenfunction(1, 1, Parity::cosine, disc)({0, 0}) == 0.0);
  CHECK(DiscEigenfunction(2, 2, Parity::sine, disc)({0, 0}) == 0.0);
}

TEST_CASE("zero on and outside the boundary")
{
  const Disc disc{{0.2, -0.1}, 1.3};
  for (int m = 1; m <= 5; ++m)
    for (int n = 0; n <= 2; ++n)
      for (Parity p : {Parity::cosine, Parity::sine}) {
        if (n == 0 && p == Parity::sine)
          continue;
        DiscEigenfunction e(m, n, p, disc);
        for (double phi = 0.1; phi < 6.28; phi += 0.7) {
          const Point2 edge{0.2 + 1.3 * std::cos(phi), -0.1 + 1.3 * std::sin(phi)};
          CHECK(std::abs(e(edge)) < 1e-10);
          const Point2 out{0.2 + 1.5 * std::cos(phi), -0.1 + 1.5 * std::sin(phi)};
          CHECK(e(out) == 0.0);
        }
      }
}

TEST_CASE("invalid indices")
{
  const Disc disc{{0, 0}, 1.0};
  CHECK_THROWS_AS(DiscEigenfunction(0, 0, Parity::cosine, disc), DomainError);
  CHECK_THROWS_AS(DiscEigenfunction(1, -1, Parity::cosine, disc), DomainError);
  CHECK_THROWS_AS(DiscEigenfunction(1, 0, Parity::sine, disc), DomainError);
  CHECK_THROWS_AS(DiscEigenfunction(1, 0, Parity::cosine, Disc{{0, 0}, 0.0}), DomainError);
}

TEST_CASE("orthonormality of the 25-term basis")
{
  const Disc disc{{0, 0}, 0.9};
  const BasisIndex basis(5, 2);
  const auto funcs = eigenfunctions(basis, disc);
  const auto mesh = build_mesh(disc, 0.01);
  const auto gram = oracle::gram_matrix(mesh, funcs);
  const std::size_t P = funcs.size();
  double worst = 0.0;
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b)
      worst = std::max(worst, std::abs(gram[a * P + b] - (a == b ? 1.0 : 0.0)));
  CHECK(worst < 1e-3);
}

TEST_CASE("Helmholtz residual shrinks at second order")
{
  const Disc disc{{0, 0}, 1.0};
  DiscEigenfunction e(2, 1, Parity::cosine, disc);
  const double lambda = e.wavenumber() * e.wavenumber();
  auto residual = [&](double h) {
    double worst = 0.0;
    for (double x = -0.5; x <= 0.5; x += 0.125)
      for (double y = -0.5; y <= 0.5; y += 0.125) {
        const double lap = (e({x + h, y}) + e({x - h, y}) + e({x, y + h}) + e({x, y - h}) - 4 * e({x, y})) / (h * h);
        worst = std::max(worst, std::abs(-lap - lambda * e({x, y})));
      }
    return worst;
  };
  const double r1 = residual(0.02), r2 = residual(0.01);
  CHECK(r2 < r1);
  CHECK(std::log2(r1 / r2) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("translation invariance")
{
  DiscEigenfunction a(2, 2, Parity::sine, Disc{{0, 0}, 1.0});
  DiscEigenfunction b(2, 2, Parity::sine, Disc{{1.5, -2.0}, 1.0});
  for (double t = 0.0; t < 6.0; t += 0.5) {
    const Point2 p{0.4 * std::cos(t), 0.6 * std::sin(t)};
    CHECK(b(p + Point2{1.5, -2.0}) == doctest::Approx(a(p)).epsilon(1e-12));
  }
}
