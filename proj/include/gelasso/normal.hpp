#pragma once

namespace gelasso {

// Standard normal CDF, computed through erfc. Accurate to full double
// precision over the whole real line; +-inf map to 1/0.
double normal_cdf(double x);

// Standard normal density.
double normal_pdf(double x);

// Quantile function. Asymptotic tail start plus guarded Newton refinement
// against normal_cdf; accurate to ~1e-14 for p in (0, 1). Throws InputError
// outside (0, 1) unless p is exactly 0 or 1, which map to -+inf.
double normal_quantile(double p);

// P(X <= h, Y <= k) for a standard bivariate normal pair with correlation
// rho in (-1, 1). +-inf in h or k reduce to the marginal CDF. Absolute
// accuracy is ~1e-10, comfortably inside the 1e-7 contract; rho at or
// beyond +-1 throws RhoOutOfRange.
//
// Method: Gauss-Legendre quadrature of the correlation-derivative identity
//   Phi2(h,k,rho) = Phi(h)Phi(k)
//                 + (1/2pi) Int_0^asin(rho) exp(-(h^2 - 2hk sin t + k^2)
//                                               / (2 cos^2 t)) dt,
// with the node count stepped up in |rho| and the near-singular tail of the
// integration range (|rho| > 0.925) resolved by geometrically shrinking
// panels toward the endpoint.
double bivariate_normal_cdf(double h, double k, double rho);

}  // namespace gelasso
