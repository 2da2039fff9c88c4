#pragma once

#include <functional>

namespace gelasso {

struct MinimizeResult {
  double x = 0.0;
  double fx = 0.0;
  int evaluations = 0;
};

// Brent's parabolic-interpolation/golden-section minimizer on [a, b].
// Finds a local minimum of f to absolute x-tolerance xatol. For unimodal f
// (the polychoric profile likelihood is) the result is the global minimum
// over the interval up to xatol.
MinimizeResult brent_minimize(const std::function<double(double)>& f, double a,
                              double b, double xatol, int max_iter = 200);

}  // namespace gelasso
