#pragma once

#include <string>
#include <vector>

#include "gelasso/linalg.hpp"

namespace gelasso {

enum class CorrelationSource { pearson, polychoric };

// Symmetric correlation matrix with provenance and a log of any
// positive-definiteness repairs applied on the way in.
struct CorrelationMatrix {
  Matrix values;
  CorrelationSource source = CorrelationSource::pearson;
  bool repaired = false;
  std::vector<std::string> repair_log;

  int dim() const { return static_cast<int>(values.rows()); }
  double max_abs_offdiag() const;
};

// Per-variable z-scale cut points (levels - 1 per variable). Estimated sets
// may contain tied values at the clamp bound when top/bottom categories are
// empty; generated schemes are strictly increasing.
struct ThresholdSet {
  std::vector<std::vector<double>> cuts;
};

// Product-moment correlations of continuous data (rows = observations).
// Throws TooFewRows for n < 2 and ZeroVariance for constant columns.
CorrelationMatrix pearson_matrix(const Matrix& data);

// Step one of the two-step polychoric estimator: thresholds from the
// marginal cumulative proportions, clamped to [1/(2n), 1 - 1/(2n)] before
// the quantile transform so empty edge categories stay finite. `levels` of
// 0 means infer from the data maximum.
std::vector<double> estimate_thresholds(const Eigen::Ref<const Eigen::VectorXi>& column,
                                        int levels = 0);

// Step two: maximum-likelihood latent correlation of an ordinal pair with
// thresholds held fixed at their marginal estimates. The search runs over
// [-0.9999, 0.9999] (Brent, 1e-8 in rho); boundary solutions snap to the
// clamp exactly. Throws DegenerateTable when either column is constant.
double polychoric_pair(const Eigen::Ref<const Eigen::VectorXi>& col_i,
                       const Eigen::Ref<const Eigen::VectorXi>& col_j);

// Pairwise polychoric matrix; indefinite results are repaired with
// nearest_pd and the repair is recorded in the log.
CorrelationMatrix polychoric_matrix(const IntMatrix& data);

// Eigenvalue clipping at floor 1e-8 plus rescaling to unit diagonal,
// iterated until the floor holds. Inputs already at the floor with a unit
// diagonal pass through unchanged.
Matrix nearest_pd(const Matrix& m);

}  // namespace gelasso
