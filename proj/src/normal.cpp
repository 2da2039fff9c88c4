#include "gelasso/normal.hpp"

#include <cmath>
#include <limits>

#include "gelasso/errors.hpp"

namespace gelasso {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kTwoPi = 6.283185307179586477;

// Gauss-Legendre nodes/weights on [-1, 1], positive half; the full rule is
// symmetric. 6/12/20-point sets, the classic ladder for this integrand.
constexpr double kGL6x[3] = {0.2386191860831969086, 0.6612093864662645137,
                             0.9324695142031520278};
constexpr double kGL6w[3] = {0.4679139345726910474, 0.3607615730481386076,
                             0.1713244923791703450};

constexpr double kGL12x[6] = {0.1252334085114689155, 0.3678314989981801937,
                              0.5873179542866174473, 0.7699026741943046870,
                              0.9041172563704748566, 0.9815606342467192506};
constexpr double kGL12w[6] = {0.2491470458134027850, 0.2334925365383548087,
                              0.2031674267230659217, 0.1600783285433462263,
                              0.1069393259953184310, 0.0471753363865118272};

constexpr double kGL20x[10] = {0.0765265211334973338, 0.2277858511416450780,
                               0.3737060887154195606, 0.5108670019508270980,
                               0.6360536807265150255, 0.7463319064601507926,
                               0.8391169718222188234, 0.9122344282513259059,
                               0.9639719272779137913, 0.9931285991850949247};
constexpr double kGL20w[10] = {0.1527533871307258506, 0.1491729864726037467,
                               0.1420961093183820513, 0.1316886384491766269,
                               0.1181945319615184173, 0.1019301198172404350,
                               0.0832767415767047487, 0.0626720483341090636,
                               0.0406014298003869413, 0.0176140071391521183};

// Integrand of the rho-derivative identity after the t = asin(r)
// substitution; bounded by 1 and smooth on (-pi/2, pi/2).
inline double theta_integrand(double h, double k, double t) {
  const double st = std::sin(t);
  const double ct2 = std::cos(t) * std::cos(t);
  const double expo = -(h * h - 2.0 * h * k * st + k * k) / (2.0 * ct2);
  return std::exp(expo);
}

double gl_panel(double h, double k, double lo, double hi, const double* x,
                const double* w, int half) {
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int i = 0; i < half; ++i) {
    acc += w[i] * (theta_integrand(h, k, c + r * x[i]) +
                   theta_integrand(h, k, c - r * x[i]));
  }
  return acc * r;
}

}  // namespace

double normal_cdf(double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double normal_pdf(double x) {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_quantile(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0)
    throw InputError("normal_quantile: p outside [0, 1]");
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (p == 0.5) return 0.0;

  const bool lower = p < 0.5;
  const double q = lower ? p : 1.0 - p;  // q in (0, 0.5)

  // Start from the tail asymptotics of log Phi(-x) ~ -x^2/2 - log(x) -
  // log sqrt(2pi), iterated twice; good to a few percent everywhere.
  double x;
  if (q > 0.2) {
    x = 2.50662827 * (0.5 - q);  // ~ inverse slope at the median
  } else {
    const double u = -2.0 * std::log(q);
    x = std::sqrt(u);
    for (int it = 0; it < 2; ++it) {
      x = std::sqrt(u - 2.0 * std::log(x * 2.50662827463100905));
    }
  }
  x = -x;  // lower-tail sign; flip at the end if needed

  // Guarded Newton against normal_cdf; the bracket [a, b] always holds the
  // root, so a bisection fallback keeps every step sane.
  double a = -42.0, b = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double f = normal_cdf(x) - q;
    if (f > 0.0)
      b = x;
    else if (f < 0.0)
      a = x;
    else
      break;
    const double d = normal_pdf(x);
    double step = d > 0.0 ? f / d : 0.0;
    double next = x - step;
    if (!(next > a) || !(next < b)) next = 0.5 * (a + b);
    if (std::abs(next - x) < 1e-15 * (1.0 + std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return lower ? x : -x;
}

double bivariate_normal_cdf(double h, double k, double rho) {
  if (std::isnan(h) || std::isnan(k) || std::isnan(rho))
    throw InputError("bivariate_normal_cdf: NaN argument");
  if (!(rho > -1.0 && rho < 1.0))
    throw RhoOutOfRange("bivariate_normal_cdf: rho must lie strictly inside (-1, 1)");
  if (std::isinf(h) || std::isinf(k)) {
    if ((std::isinf(h) && h < 0) || (std::isinf(k) && k < 0))
      return 0.0;  // a -inf bound: empty quadrant
    if (std::isinf(h) && std::isinf(k)) return 1.0;
    return std::isinf(h) ? normal_cdf(k) : normal_cdf(h);
  }

  const double base = normal_cdf(h) * normal_cdf(k);
  if (rho == 0.0) return base;

  const double alpha = std::asin(rho);
  const double ar = std::abs(rho);
  double integral = 0.0;
  if (ar <= 0.925) {
    if (ar < 0.3) {
      integral = gl_panel(h, k, 0.0, alpha, kGL6x, kGL6w, 3);
    } else if (ar < 0.75) {
      integral = gl_panel(h, k, 0.0, alpha, kGL12x, kGL12w, 6);
    } else {
      integral = gl_panel(h, k, 0.0, alpha, kGL20x, kGL20w, 10);
    }
  } else {
    // Head up to |rho| = 0.925, then geometrically shrinking panels into
    // the boundary layer at the far end.
    const double alpha0 = std::copysign(std::asin(0.925), rho);
    integral = gl_panel(h, k, 0.0, alpha0, kGL20x, kGL20w, 10);
    const int panels = 10;
    double tail = alpha - alpha0;  // signed remainder
    double lo = alpha0;
    for (int i = 0; i < panels; ++i) {
      const double len = (i + 1 < panels) ? tail * 0.5 : tail;
      integral += gl_panel(h, k, lo, lo + len, kGL12x, kGL12w, 6);
      lo += len;
      tail -= len;
    }
  }

  double p = base + integral / kTwoPi;
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  return p;
}

}  // namespace gelasso
