#include "gelasso/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gelasso/errors.hpp"
#include "gelasso/kernels.hpp"

namespace gelasso {

ConfusionCounts confusion_counts(const PcorNetwork& truth,
                                 const PcorNetwork& estimate) {
  const Eigen::Index p = truth.weights.rows();
  if (estimate.weights.rows() != p || estimate.weights.cols() != p ||
      truth.weights.cols() != p)
    throw DimensionMismatch("confusion_counts: networks differ in dimension");

  ConfusionCounts c;
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const bool t = truth.weights(i, j) != 0.0;
      const bool e = estimate.weights(i, j) != 0.0;
      if (t && e)
        ++c.tp;
      else if (!t && e)
        ++c.fp;
      else if (t && !e)
        ++c.fn;
      else
        ++c.tn;
    }
  }
  return c;
}

double sensitivity(const ConfusionCounts& counts) {
  if (counts.tp + counts.fn <= 0) throw NoTrueEdges();
  return static_cast<double>(counts.tp) / (counts.tp + counts.fn);
}

double specificity(const ConfusionCounts& counts) {
  if (counts.tn + counts.fp <= 0) throw NoTrueNonEdges();
  return static_cast<double>(counts.tn) / (counts.tn + counts.fp);
}

double weight_correlation(const PcorNetwork& truth,
                          const PcorNetwork& estimate) {
  const Eigen::Index p = truth.weights.rows();
  if (estimate.weights.rows() != p || estimate.weights.cols() != p)
    throw DimensionMismatch("weight_correlation: networks differ in dimension");
  if (estimate.edge_count() == 0) return 0.0;

  const std::size_t m = static_cast<std::size_t>(p) * (p - 1) / 2;
  std::vector<double> a, b;
  a.reserve(m);
  b.reserve(m);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      a.push_back(truth.weights(i, j));
      b.push_back(estimate.weights(i, j));
    }
  }
  // A constant vector (e.g. an empty or fully-uniform truth) has no
  // defined correlation; that is a missing value, not an error.
  const auto constant = [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end()) ==
           *std::min_element(v.begin(), v.end());
  };
  if (constant(a) || constant(b))
    return std::numeric_limits<double>::quiet_NaN();

  const double n = static_cast<double>(m);
  const double ma = kern::sum(a.data(), m) / n;
  const double mb = kern::sum(b.data(), m) / n;
  for (double& x : a) x -= ma;
  for (double& x : b) x -= mb;
  const double sa = kern::dot(a.data(), a.data(), m);
  const double sb = kern::dot(b.data(), b.data(), m);
  if (sa <= 0.0 || sb <= 0.0)
    return std::numeric_limits<double>::quiet_NaN();
  double r = kern::dot(a.data(), b.data(), m) / std::sqrt(sa * sb);
  if (r > 1.0) r = 1.0;
  if (r < -1.0) r = -1.0;
  return r;
}

ComparisonResult compare_networks(const PcorNetwork& truth,
                                  const PcorNetwork& estimate) {
  ComparisonResult out;
  out.counts = confusion_counts(truth, estimate);
  out.estimated_empty = estimate.edge_count() == 0;
  out.sensitivity = (out.counts.tp + out.counts.fn > 0)
                        ? sensitivity(out.counts)
                        : std::numeric_limits<double>::quiet_NaN();
  out.specificity = (out.counts.tn + out.counts.fp > 0)
                        ? specificity(out.counts)
                        : std::numeric_limits<double>::quiet_NaN();
  out.weight_correlation = weight_correlation(truth, estimate);
  return out;
}

}  // namespace gelasso
