#include <doctest.h>

#include <cmath>
#include <limits>

#include "gelasso/errors.hpp"
#include "gelasso/normal.hpp"

using namespace gelasso;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Independent oracle: adaptive Simpson quadrature of the correlation-
// derivative identity in r (a different integration variable and scheme
// than the implementation uses).
double bvn_oracle_integrand(double h, double k, double r) {
  const double omr2 = 1.0 - r * r;
  return std::exp(-(h * h - 2.0 * h * k * r + k * k) / (2.0 * omr2)) /
         std::sqrt(omr2);
}

double simpson(double h, double k, double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 *
         (bvn_oracle_integrand(h, k, a) + 4.0 * bvn_oracle_integrand(h, k, m) +
          bvn_oracle_integrand(h, k, b));
}

double adaptive(double h, double k, double a, double b, double whole,
                double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(h, k, a, m);
  const double right = simpson(h, k, m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(h, k, a, m, left, tol / 2, depth - 1) +
         adaptive(h, k, m, b, right, tol / 2, depth - 1);
}

double bvn_oracle(double h, double k, double rho) {
  const double base = normal_cdf(h) * normal_cdf(k);
  if (rho == 0.0) return base;
  const double integral =
      adaptive(h, k, 0.0, rho, simpson(h, k, 0.0, rho), 1e-12, 40);
  return base + integral / (2.0 * 3.14159265358979323846);
}

}  // namespace

TEST_CASE("normal_cdf basics") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(kInf) == 1.0);
  CHECK(normal_cdf(-kInf) == 0.0);
  // Phi(1.959963985...) = 0.975
  CHECK(normal_cdf(1.9599639845400542355) == doctest::Approx(0.975).epsilon(1e-12));
}

TEST_CASE("normal_quantile matches frozen high-precision values") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.2) == doctest::Approx(-0.84162123357291420518).epsilon(1e-12));
  CHECK(normal_quantile(0.4) == doctest::Approx(-0.2533471031357997988).epsilon(1e-12));
  CHECK(normal_quantile(0.6) == doctest::Approx(0.2533471031357997988).epsilon(1e-12));
  CHECK(normal_quantile(0.8) == doctest::Approx(0.84162123357291420518).epsilon(1e-12));
  CHECK(normal_quantile(0.025) == doctest::Approx(-1.9599639845400542355).epsilon(1e-12));
  CHECK(normal_quantile(1e-6) == doctest::Approx(-4.7534243088228989482).epsilon(1e-12));
  CHECK(normal_quantile(0.0) == -kInf);
  CHECK(normal_quantile(1.0) == kInf);
  CHECK_THROWS_AS(normal_quantile(-0.1), InputError);
  CHECK_THROWS_AS(normal_quantile(1.1), InputError);
}

TEST_CASE("normal_quantile round-trips through normal_cdf") {
  for (double p = 1e-10; p < 1.0; p = p < 0.01 ? p * 3.7 : p + 0.0137) {
    const double x = normal_quantile(p);
    CHECK(std::abs(normal_cdf(x) - p) <= 1e-13 + 1e-11 * p);
  }
  // Symmetry.
  for (double p : {0.001, 0.1, 0.25, 0.49})
    CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-13));
}

TEST_CASE("bivariate_normal_cdf closed forms") {
  CHECK(bivariate_normal_cdf(0, 0, 0.0) == 0.25);
  // 1/4 + asin(rho)/(2 pi)
  CHECK(bivariate_normal_cdf(0, 0, 0.5) ==
        doctest::Approx(0.33333333333333333).epsilon(1e-9));
  CHECK(bivariate_normal_cdf(0, 0, -0.5) ==
        doctest::Approx(0.16666666666666667).epsilon(1e-9));
  CHECK(bivariate_normal_cdf(0, 0, 0.9999) ==
        doctest::Approx(0.49774919045259527905).epsilon(1e-9));
  for (double rho : {-0.9999, -0.99, -0.6, -0.2, 0.1, 0.75, 0.93, 0.9999}) {
    const double closed = 0.25 + std::asin(rho) / (2.0 * 3.14159265358979323846);
    CHECK(std::abs(bivariate_normal_cdf(0, 0, rho) - closed) <= 1e-7);
  }
}

TEST_CASE("bivariate_normal_cdf sentinels reduce to marginals") {
  CHECK(bivariate_normal_cdf(kInf, 0.7, 0.5) == doctest::Approx(normal_cdf(0.7)).epsilon(1e-14));
  CHECK(bivariate_normal_cdf(-0.3, kInf, -0.8) == doctest::Approx(normal_cdf(-0.3)).epsilon(1e-14));
  CHECK(bivariate_normal_cdf(-kInf, 0.7, 0.5) == 0.0);
  CHECK(bivariate_normal_cdf(0.7, -kInf, 0.5) == 0.0);
  CHECK(bivariate_normal_cdf(kInf, kInf, 0.5) == 1.0);
}

TEST_CASE("bivariate_normal_cdf rejects rho outside (-1,1)") {
  CHECK_THROWS_AS(bivariate_normal_cdf(0, 0, 1.0), RhoOutOfRange);
  CHECK_THROWS_AS(bivariate_normal_cdf(0, 0, -1.0), RhoOutOfRange);
  CHECK_THROWS_AS(bivariate_normal_cdf(0, 0, 1.5), RhoOutOfRange);
}

TEST_CASE("bivariate_normal_cdf matches frozen high-precision values") {
  struct Case {
    double h, k, rho, expected;
  };
  static const Case cases[] = {
      {0.5, 0.3, 0.7, 0.534830029649524221},
      {-1.0, 2.0, -0.4, 0.147783949707966007},
      {1.5, 1.5, 0.925, 0.913341312391017089},
      {2.0, -2.0, 0.95, 0.0227501319481792072},
      {0.1, -0.1, 0.99, 0.458163727636199105},
      {-3.0, -3.0, 0.9999, 0.00132489567141957149},
      {1.0, 1.0, -0.9999, 0.682689492137085897},
      {4.0, 4.0, 0.5, 0.999937144571096044},
      {-4.5, 1.2, 0.8, 3.39767312473005976e-6},
      {0.0, 0.0, 0.3, 0.298493342010339143},
      {6.0, -1.0, -0.5, 0.158655252953128313},
      {2.5, 2.5, 0.9999, 0.993691446155199997},
      {0.7, -0.3, -0.925, 0.150891038780332208},
      {-0.5, -0.5, 0.999, 0.30225586368507144},
      {3.0, 1.0, 0.97, 0.841344746068542948},
  };
  for (const auto& c : cases) {
    CHECK(std::abs(bivariate_normal_cdf(c.h, c.k, c.rho) - c.expected) <= 1e-7);
  }
}

TEST_CASE("bivariate_normal_cdf agrees with an independent quadrature oracle") {
  for (double rho : {-0.98, -0.8, -0.5, -0.1, 0.2, 0.6, 0.9, 0.98}) {
    for (double h : {-2.5, -1.0, -0.2, 0.0, 0.4, 1.3, 3.0}) {
      for (double k : {-3.0, -0.7, 0.0, 0.9, 2.2}) {
        const double got = bivariate_normal_cdf(h, k, rho);
        const double want = bvn_oracle(h, k, rho);
        CHECK(std::abs(got - want) <= 1e-7);
      }
    }
  }
}

TEST_CASE("bivariate_normal_cdf monotonicity") {
  // Nondecreasing in h and k.
  for (double rho : {-0.9, 0.0, 0.7}) {
    double prev = 0.0;
    for (double h = -4.0; h <= 4.0; h += 0.25) {
      const double v = bivariate_normal_cdf(h, 0.3, rho);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
  // Monotone in rho at h = k = 0.
  double prev = 0.0;
  bool first = true;
  for (double rho = -0.9999; rho <= 0.9999; rho += 0.01) {
    const double v = bivariate_normal_cdf(0.0, 0.0, rho);
    if (!first) CHECK(v >= prev - 1e-12);
    prev = v;
    first = false;
  }
}
