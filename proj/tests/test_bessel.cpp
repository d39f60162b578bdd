#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dsmb/bessel.hpp"
#include "dsmb/errors.hpp"
#include "oracles.hpp"

using namespace dsmb;

TEST_CASE("bessel_j small values")
{
  CHECK(bessel_j(0, 0.0) == 1.0);
  for (int n = 1; n <= 10; ++n)
    CHECK(bessel_j(n, 0.0) == 0.0);
  CHECK(bessel_j(0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-14));
  CHECK(bessel_j(1, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-14));
}

TEST_CASE("bessel_j matches the Hansen-Bessel integral")
{
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> order(0, 8);
  std::uniform_real_distribution<double> arg(-30.0, 30.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = order(gen);
    const double y = arg(gen);
    worst = std::max(worst, std::abs(bessel_j(n, y) - oracle::hansen_bessel(n, y)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("bessel_j agrees with the standard library on the recurrence branch")
{
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n)
    for (double y = 12.5; y < 200.0; y += 3.7)
      worst = std::max(worst, std::abs(bessel_j(n, y) - std::cyl_bessel_j(double(n), y)));
  CHECK(worst < 1e-10);
}

TEST_CASE("bessel_j parity in y")
{
  for (int n = 0; n <= 6; ++n)
    for (double y : {0.3, 4.1, 17.0, 25.5}) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(bessel_j(n, -y) == doctest::Approx(sign * bessel_j(n, y)).epsilon(1e-14));
    }
}

TEST_CASE("bessel_j domain errors")
{
  CHECK_THROWS_AS(bessel_j(-1, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(65, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(0, 201.0), DomainError);
  CHECK_THROWS_AS(bessel_j(0, std::nan("")), DomainError);
}

TEST_CASE("first zeros against bisection on the series")
{
  CHECK(std::abs(bessel_zero(1, 0) - oracle::bisect_series_root(0, 2.0, 3.0)) < 1e-10);
  CHECK(std::abs(bessel_zero(1, 1) - oracle::bisect_series_root(1, 3.0, 4.5)) < 1e-10);
  CHECK(bessel_zero(1, 0) == doctest::Approx(2.404825557695773).epsilon(1e-12));
  CHECK(bessel_zero(1, 1) == doctest::Approx(3.831705970207512).epsilon(1e-12));
  CHECK(bessel_zero(2, 0) == doctest::Approx(5.520078110286311).epsilon(1e-12));
}

TEST_CASE("zeros are roots, increasing, and interlace")
{
  for (int n = 0; n <= 10; ++n) {
    double prev = 0.0;
    for (int m = 1; m <= 10; ++m) {
      const double q = bessel_zero(m, n);
      CHECK(q > prev);
      CHECK(std::abs(bessel_j(n, q)) < 1e-12);
      if (n > 0)
        CHECK(q > bessel_zero(m, n - 1));
      prev = q;
    }
  }
}

TEST_CASE("zero table")
{
  const auto& table = default_zero_table();
  CHECK(table.max_m() >= 5);
  CHECK(table.max_n() >= 2);
  CHECK(table.zero(3, 2) == bessel_zero(3, 2));
  CHECK_THROWS_AS(bessel_zero(0, 0), DomainError);
  CHECK_THROWS_AS(bessel_zero(1, -1), DomainError);
  BesselZeroTable small(3, 1);
  CHECK_THROWS(small.zero(4, 0));
}
