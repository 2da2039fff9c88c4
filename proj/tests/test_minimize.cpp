#include <doctest.h>

#include <cmath>

#include "gelasso/minimize.hpp"

using namespace gelasso;

TEST_CASE("brent_minimize finds quadratic minima to tolerance") {
  // x-accuracy on a smooth minimum bottoms out near sqrt(eps)*|x|.
  const auto f = [](double x) { return (x - 0.3) * (x - 0.3) + 2.0; };
  const auto r = brent_minimize(f, -1.0, 1.0, 1e-10);
  CHECK(std::abs(r.x - 0.3) <= 5e-8);
  CHECK(r.fx == doctest::Approx(2.0));
}

TEST_CASE("brent_minimize handles non-smooth and shifted minima") {
  const auto f = [](double x) { return std::abs(x - 0.2) + 0.1 * x * x; };
  const auto r = brent_minimize(f, -1.0, 1.0, 1e-9);
  CHECK(std::abs(r.x - 0.2) <= 1e-7);

  const auto g = [](double x) { return std::cos(x); };
  const auto rg = brent_minimize(g, 0.5, 6.0, 1e-10);
  CHECK(std::abs(rg.x - 3.14159265358979) <= 1e-7);
}

TEST_CASE("brent_minimize on a monotone function converges to the boundary") {
  const auto f = [](double x) { return -x; };
  const auto r = brent_minimize(f, -1.0, 1.0, 1e-8);
  CHECK(r.x >= 1.0 - 1e-6);
}

TEST_CASE("brent_minimize stays within eval budget") {
  int evals = 0;
  const auto f = [&](double x) {
    ++evals;
    return x * x * x * x - 0.7 * x;
  };
  brent_minimize(f, -2.0, 2.0, 1e-9);
  CHECK(evals < 80);
}
