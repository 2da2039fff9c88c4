#include "gelasso/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "gelasso/errors.hpp"
#include "gelasso/kernels.hpp"
#include "gelasso/minimize.hpp"
#include "gelasso/normal.hpp"

namespace gelasso {

namespace {

constexpr double kRhoClamp = 0.9999;
constexpr double kCellFloor = 1e-12;
constexpr double kEigFloor = 1e-8;

int checked_levels(const Eigen::Ref<const Eigen::VectorXi>& column, int levels) {
  if (column.size() < 1) throw InputError("ordinal column is empty");
  const int observed_max = column.maxCoeff();
  const int observed_min = column.minCoeff();
  if (observed_min < 1)
    throw InputError("ordinal levels must be integers >= 1");
  if (levels == 0) levels = observed_max;
  if (observed_max > levels)
    throw InputError("ordinal level exceeds the declared level count");
  return levels;
}

}  // namespace

double CorrelationMatrix::max_abs_offdiag() const {
  double best = 0.0;
  for (Eigen::Index j = 0; j < values.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      best = std::max(best, std::abs(values(i, j)));
  return best;
}

CorrelationMatrix pearson_matrix(const Matrix& data) {
  const Eigen::Index n = data.rows();
  const Eigen::Index p = data.cols();
  if (n < 2) throw TooFewRows("pearson_matrix: need at least 2 rows");
  if (p < 1) throw InputError("pearson_matrix: no columns");

  Matrix centered(n, p);
  Vector norms(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    if (data.col(j).maxCoeff() == data.col(j).minCoeff())
      throw ZeroVariance(static_cast<int>(j));
    const double mean = kern::sum(data.col(j).data(), n) / double(n);
    centered.col(j) = data.col(j).array() - mean;
    const double ss = kern::dot(centered.col(j).data(), centered.col(j).data(), n);
    if (ss <= 0.0) throw ZeroVariance(static_cast<int>(j));
    norms(j) = std::sqrt(ss);
  }

  Matrix r = Matrix::Identity(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      double v = kern::dot(centered.col(i).data(), centered.col(j).data(), n) /
                 (norms(i) * norms(j));
      v = std::clamp(v, -1.0, 1.0);
      r(i, j) = v;
      r(j, i) = v;
    }
  }
  return {std::move(r), CorrelationSource::pearson, false, {}};
}

std::vector<double> estimate_thresholds(
    const Eigen::Ref<const Eigen::VectorXi>& column, int levels) {
  levels = checked_levels(column, levels);
  const double n = static_cast<double>(column.size());

  std::vector<double> counts(levels, 0.0);
  for (Eigen::Index r = 0; r < column.size(); ++r) counts[column(r) - 1] += 1.0;

  const double lo = 1.0 / (2.0 * n);
  const double hi = 1.0 - lo;
  std::vector<double> cuts(levels - 1);
  double cum = 0.0;
  for (int k = 0; k + 1 < levels; ++k) {
    cum += counts[k];
    cuts[k] = normal_quantile(std::clamp(cum / n, lo, hi));
  }
  return cuts;
}

namespace {

// Strict-weak order on raw columns; used to canonicalize pair orientation
// so the estimate is exactly symmetric in its arguments (the likelihood is
// analytically transpose-invariant, but summation order would otherwise
// leak ~1e-16 noise into the optimizer).
bool column_less(const Eigen::Ref<const Eigen::VectorXi>& a,
                 const Eigen::Ref<const Eigen::VectorXi>& b) {
  for (Eigen::Index r = 0; r < a.size(); ++r) {
    if (a(r) != b(r)) return a(r) < b(r);
  }
  return false;
}

double polychoric_pair_oriented(const Eigen::Ref<const Eigen::VectorXi>& col_i,
                                const Eigen::Ref<const Eigen::VectorXi>& col_j);

}  // namespace

double polychoric_pair(const Eigen::Ref<const Eigen::VectorXi>& col_i,
                       const Eigen::Ref<const Eigen::VectorXi>& col_j) {
  if (col_i.size() != col_j.size())
    throw DimensionMismatch("polychoric_pair: columns differ in length");
  if (column_less(col_j, col_i)) return polychoric_pair_oriented(col_j, col_i);
  return polychoric_pair_oriented(col_i, col_j);
}

namespace {

double polychoric_pair_oriented(const Eigen::Ref<const Eigen::VectorXi>& col_i,
                                const Eigen::Ref<const Eigen::VectorXi>& col_j) {
  const Eigen::Index n = col_i.size();
  const int li = checked_levels(col_i, 0);
  const int lj = checked_levels(col_j, 0);
  if (li < 2 || lj < 2) throw DegenerateTable();

  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(li, lj);
  for (Eigen::Index r = 0; r < n; ++r) counts(col_i(r) - 1, col_j(r) - 1) += 1.0;
  // Declared levels can exceed the observed ones; constancy is about what
  // was actually seen.
  int rows_seen = 0, cols_seen = 0;
  for (int a = 0; a < li; ++a) rows_seen += counts.row(a).sum() > 0 ? 1 : 0;
  for (int b = 0; b < lj; ++b) cols_seen += counts.col(b).sum() > 0 ? 1 : 0;
  if (rows_seen < 2 || cols_seen < 2) throw DegenerateTable();

  const std::vector<double> ti = estimate_thresholds(col_i, li);
  const std::vector<double> tj = estimate_thresholds(col_j, lj);
  const double inf = std::numeric_limits<double>::infinity();

  // Padded cut arrays with sentinel ends; the CDF grid over them gives
  // every rectangle probability by differencing. Only the interior of the
  // grid depends on rho, so marginal rows are filled once.
  std::vector<double> a_cuts(li + 1), b_cuts(lj + 1);
  a_cuts[0] = -inf;
  for (int a = 1; a < li; ++a) a_cuts[a] = ti[a - 1];
  a_cuts[li] = inf;
  b_cuts[0] = -inf;
  for (int b = 1; b < lj; ++b) b_cuts[b] = tj[b - 1];
  b_cuts[lj] = inf;

  Eigen::MatrixXd grid(li + 1, lj + 1);
  for (int a = 0; a <= li; ++a) {
    grid(a, 0) = 0.0;
    grid(a, lj) = normal_cdf(a_cuts[a]);
  }
  for (int b = 0; b <= lj; ++b) {
    grid(0, b) = 0.0;
    grid(li, b) = normal_cdf(b_cuts[b]);
  }

  const auto neg_loglik = [&](double rho) {
    for (int a = 1; a < li; ++a)
      for (int b = 1; b < lj; ++b)
        grid(a, b) = bivariate_normal_cdf(a_cuts[a], b_cuts[b], rho);
    double ll = 0.0;
    for (int a = 0; a < li; ++a) {
      for (int b = 0; b < lj; ++b) {
        const double c = counts(a, b);
        if (c == 0.0) continue;
        const double pi = grid(a + 1, b + 1) - grid(a, b + 1) -
                          grid(a + 1, b) + grid(a, b);
        ll += c * std::log(std::max(pi, kCellFloor));
      }
    }
    return -ll;
  };

  double rho = brent_minimize(neg_loglik, -kRhoClamp, kRhoClamp, 1e-8).x;
  if (kRhoClamp - rho < 1e-6) rho = kRhoClamp;
  if (rho + kRhoClamp < 1e-6) rho = -kRhoClamp;
  return rho;
}

}  // namespace

CorrelationMatrix polychoric_matrix(const IntMatrix& data) {
  const Eigen::Index p = data.cols();
  if (p < 1) throw InputError("polychoric_matrix: no columns");
  Matrix r = Matrix::Identity(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      double v;
      try {
        v = polychoric_pair(data.col(i), data.col(j));
      } catch (const DegenerateTable&) {
        throw DegenerateTable(static_cast<int>(i), static_cast<int>(j));
      }
      r(i, j) = v;
      r(j, i) = v;
    }
  }

  CorrelationMatrix out{std::move(r), CorrelationSource::polychoric, false, {}};
  const double min_eig = min_eigenvalue(out.values);
  if (min_eig < kEigFloor) {
    out.values = nearest_pd(out.values);
    out.repaired = true;
    out.repair_log.push_back(
        "pairwise polychoric matrix indefinite (min eigenvalue " +
        std::to_string(min_eig) + "); eigenvalue-clipped to the 1e-8 floor");
  }
  return out;
}

Matrix nearest_pd(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("nearest_pd: matrix not square");
  if (symmetry_gap(m) > 1e-8) throw InputError("nearest_pd: matrix not symmetric");

  const Eigen::Index p = m.rows();
  Matrix work = m;
  symmetrize(work);

  const bool unit_diag =
      (work.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-12;
  if (unit_diag && min_eigenvalue(work) >= kEigFloor) return work;

  double floor = kEigFloor;
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(work);
    Vector lam = es.eigenvalues().cwiseMax(floor);
    work = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    Vector d = work.diagonal().cwiseSqrt();
    for (Eigen::Index j = 0; j < p; ++j)
      for (Eigen::Index i = 0; i < p; ++i) work(i, j) /= d(i) * d(j);
    symmetrize(work);
    work.diagonal().setOnes();
    if (min_eigenvalue(work) >= kEigFloor) return work;
    // Rescaling can push the smallest eigenvalue back under the floor;
    // clip a little higher and go again.
    floor *= 4.0;
  }
  throw NotRepairable("nearest_pd: clipping did not reach the eigenvalue floor");
}

}  // namespace gelasso
