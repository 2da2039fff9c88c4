#pragma once

#include <vector>

#include "gelasso/linalg.hpp"

namespace gelasso {

// L1-penalized precision estimate at a fixed penalty.
struct PrecisionMatrix {
  Matrix k;
  double lambda = 0.0;
  int sweeps = 0;
  bool converged = true;
  bool diagonal_loaded = false;  // input S was indefinite and got loaded
};

// Partial-correlation weights: symmetric, zero diagonal, exact zeros for
// absent edges.
struct PcorNetwork {
  Matrix weights;

  int dim() const { return static_cast<int>(weights.rows()); }
  int edge_count() const;
  static PcorNetwork empty(int p) { return {Matrix::Zero(p, p)}; }
};

struct GlassoPath {
  std::vector<PrecisionMatrix> fits;
  // Indices into `fits` whose edge count dropped relative to the previous
  // (larger) lambda; logged, never corrected.
  std::vector<int> edge_monotonicity_violations;
};

// Graphical lasso: maximizes
//   log det K - trace(S K) - lambda * sum_{i != j} |k_ij|
// by block coordinate descent over columns with an inner soft-thresholding
// lasso solve. The diagonal is unpenalized, so lambda >= max |s_ij| yields
// a diagonal K (the empty network). Entries below 1e-10 are snapped to
// exact zero after convergence. Indefinite S is diagonally loaded by
// |min eig| + 1e-8 first (flagged in the result); the KKT residual is then
// measured against the loaded matrix. Non-convergence within 10,000 sweeps
// comes back as converged=false with the best iterate, never as a throw.
PrecisionMatrix glasso_fit(const Matrix& s, double lambda,
                           const PrecisionMatrix* warm_start = nullptr);

// Sequential fits along a descending penalty vector, each warm-started
// from the previous solution. Fit failures are rethrown tagged with the
// offending lambda index.
GlassoPath glasso_path(const Matrix& s, const std::vector<double>& lambdas);

// weight_ij = -k_ij / sqrt(k_ii k_jj), zero diagonal; zeros in K stay
// exact zeros. Throws NonPositiveDiagonal.
PcorNetwork precision_to_pcor(const Matrix& k);
inline PcorNetwork precision_to_pcor(const PrecisionMatrix& k) {
  return precision_to_pcor(k.k);
}

// Penalized objective the solver maximizes; used by tests and the path
// monotonicity checks.
double glasso_objective(const Matrix& k, const Matrix& s, double lambda);

// Max-norm KKT residual of K for the problem (S, lambda), with K^{-1}
// computed exactly. Zero at the optimum; glasso_fit drives this to <= 1e-4.
double kkt_residual(const Matrix& k, const Matrix& s, double lambda);

}  // namespace gelasso
