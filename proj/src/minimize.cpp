#include "gelasso/minimize.hpp"

#include <cmath>

namespace gelasso {

MinimizeResult brent_minimize(const std::function<double(double)>& f, double a,
                              double b, double xatol, int max_iter) {
  // Brent's localmin: golden-section steps with parabolic interpolation
  // whenever the trial point is sane.
  constexpr double golden = 0.3819660112501051518;
  const double sqrt_eps = std::sqrt(2.220446049250313e-16);

  int evals = 0;
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = f(x);
  ++evals;
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  for (int it = 0; it < max_iter; ++it) {
    const double m = 0.5 * (a + b);
    const double tol1 = sqrt_eps * std::abs(x) + xatol;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;

    bool golden_step = true;
    if (std::abs(e) > tol1) {
      // Fit a parabola through (v, fv), (w, fw), (x, fx).
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, m - x);
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x < m ? b : a) - x;
      d = golden * e;
    }

    const double u =
        x + (std::abs(d) >= tol1 ? d : std::copysign(tol1, d));
    const double fu = f(u);
    ++evals;

    if (fu <= fx) {
      if (u < x)
        b = x;
      else
        a = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        b = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx, evals};
}

}  // namespace gelasso
