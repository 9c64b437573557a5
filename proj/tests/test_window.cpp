#include <doctest.h>

#include <cmath>

#include "tfgm/util.hpp"
#include "tfgm/window.hpp"

using namespace tfgm;

TEST_SUITE("window") {

TEST_CASE("center tap is one for any sigma") {
  for (double sigma : {0.5, 5.0, 15.0, 40.0}) {
    CHECK(GaussianWindow(sigma)(0) == 1.0);
  }
}

TEST_CASE("value at one sigma is exp(-1/2)") {
  const GaussianWindow g(10.0);
  CHECK(g(10) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
}

TEST_CASE("window is symmetric and zero outside the support") {
  const GaussianWindow g(3.0, 4.0);
  const auto h = static_cast<long long>(g.half_width());
  CHECK(h == 12);
  for (long long u = 0; u <= h; ++u) CHECK(g(u) == g(-u));
  CHECK(g(h + 1) == 0.0);
  CHECK(g(-h - 1) == 0.0);
  CHECK(g.size() == 25);
}

TEST_CASE("derivative matches the analytic Gaussian derivative") {
  const GaussianWindow g(4.0);
  for (long long u : {-7LL, -1LL, 0LL, 3LL, 9LL}) {
    CHECK(g.derivative(u) ==
          doctest::Approx(-(static_cast<double>(u) / 16.0) * g(u))
              .epsilon(1e-15));
  }
  CHECK(g.derivative(0) == 0.0);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(GaussianWindow(0.0), invalid_input);
  CHECK_THROWS_AS(GaussianWindow(-1.0), invalid_input);
  CHECK_THROWS_AS(GaussianWindow(5.0, 3.9), invalid_input);
}

}  // TEST_SUITE
