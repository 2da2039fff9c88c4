#pragma once

#include <vector>

#include "gelasso/correlation.hpp"
#include "gelasso/glasso.hpp"
#include "gelasso/linalg.hpp"

namespace gelasso {

// Geometric penalty grid from lambda_max = max |off-diagonal| down to
// R * lambda_max.
struct LambdaGrid {
  std::vector<double> values;  // descending
  double ratio = 0.0;
  double lambda_max = 0.0;
};

struct EbicEntry {
  double lambda = 0.0;
  int edges = 0;
  double loglik = 0.0;
  double ebic = 0.0;
};

struct EbicTrace {
  std::vector<EbicEntry> entries;
  int selected = 0;
};

struct SelectionResult {
  PcorNetwork network;
  EbicTrace trace;
  bool all_converged = true;
  bool diagonal_loaded = false;
  std::vector<int> path_monotonicity_violations;
};

// grid_k = lambda_max * R^(k/(m-1)), k = 0..m-1. Throws
// AllZeroCorrelations when S has no nonzero off-diagonal.
LambdaGrid lambda_grid(const Matrix& s, double ratio, int m);

// (n/2) * (log det K - trace(S K)).
double gaussian_loglik(const Matrix& k, const Matrix& s, double n);

// -2 loglik + E log(n) + 4 E gamma log(p), E = nonzero upper-triangle
// count of K.
double ebic(const Matrix& k, const Matrix& s, double n, double gamma);

int count_edges(const Matrix& k);

// The full pipeline for one correlation matrix: fit the glasso path over
// the geometric grid, score each fit with EBIC, return the winner as a
// partial-correlation network plus the whole trace. EBIC ties within 1e-9
// go to the larger lambda (the sparser model). An all-zero S short-circuits
// to the empty network with a single-entry trace.
SelectionResult select_network(const CorrelationMatrix& s, double n,
                               double gamma, double ratio, int m);

}  // namespace gelasso
