#pragma once

#include "gelasso/glasso.hpp"

namespace gelasso {

struct ConfusionCounts {
  int tp = 0;
  int fp = 0;
  int tn = 0;
  int fn = 0;
};

// Edge-recovery comparison of an estimate against the truth. Undefined
// quantities (empty truth for sensitivity, constant weight vectors for the
// correlation) are carried as NaN and written out as missing values.
struct ComparisonResult {
  double sensitivity = 0.0;
  double specificity = 0.0;
  double weight_correlation = 0.0;
  ConfusionCounts counts;
  bool estimated_empty = false;
};

// Upper-triangle confusion counts; an edge is present iff its weight is
// strictly nonzero. Throws DimensionMismatch.
ConfusionCounts confusion_counts(const PcorNetwork& truth,
                                 const PcorNetwork& estimate);

// TP / (TP + FN); throws NoTrueEdges when the truth has no edges.
double sensitivity(const ConfusionCounts& counts);

// TN / (TN + FP); throws NoTrueNonEdges when the truth is fully connected.
double specificity(const ConfusionCounts& counts);

// Pearson correlation over all p(p-1)/2 upper-triangle weight pairs,
// shared zeros included. Exactly 0 when the estimate has no edges (the
// empty-network convention); NaN when either weight vector is constant
// otherwise.
double weight_correlation(const PcorNetwork& truth, const PcorNetwork& estimate);

// All of the above in one pass, with undefined values mapped to NaN
// instead of throws.
ComparisonResult compare_networks(const PcorNetwork& truth,
                                  const PcorNetwork& estimate);

}  // namespace gelasso
