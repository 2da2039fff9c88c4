#include "gelasso/model_selection.hpp"

#include <cmath>

#include "gelasso/errors.hpp"
#include "gelasso/kernels.hpp"

namespace gelasso {

LambdaGrid lambda_grid(const Matrix& s, double ratio, int m) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw InputError("lambda_grid: R must lie in (0, 1)");
  if (m < 2) throw InputError("lambda_grid: need at least 2 grid points");

  double lambda_max = 0.0;
  for (Eigen::Index j = 0; j < s.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      lambda_max = std::max(lambda_max, std::abs(s(i, j)));
  if (lambda_max == 0.0) throw AllZeroCorrelations();

  LambdaGrid grid;
  grid.ratio = ratio;
  grid.lambda_max = lambda_max;
  grid.values.resize(m);
  for (int k = 0; k < m; ++k)
    grid.values[k] = lambda_max * std::pow(ratio, double(k) / double(m - 1));
  return grid;
}

double gaussian_loglik(const Matrix& k, const Matrix& s, double n) {
  if (k.rows() != s.rows() || k.cols() != s.cols())
    throw DimensionMismatch("gaussian_loglik: K and S differ in shape");
  const double trace_sk = kern::dot(
      s.data(), k.data(), static_cast<std::size_t>(k.rows()) * k.cols());
  return 0.5 * n * (logdet_pd(k) - trace_sk);
}

int count_edges(const Matrix& k) {
  int edges = 0;
  for (Eigen::Index j = 0; j < k.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      if (k(i, j) != 0.0) ++edges;
  return edges;
}

double ebic(const Matrix& k, const Matrix& s, double n, double gamma) {
  if (!(gamma >= 0.0)) throw InputError("ebic: gamma must be >= 0");
  const double e = static_cast<double>(count_edges(k));
  const double p = static_cast<double>(k.rows());
  return -2.0 * gaussian_loglik(k, s, n) + e * std::log(n) +
         4.0 * e * gamma * std::log(p);
}

SelectionResult select_network(const CorrelationMatrix& s, double n,
                               double gamma, double ratio, int m) {
  if (!(n > 1.0))
    throw InputError("select_network: sample size must exceed 1");
  if (!(gamma >= 0.0)) throw InputError("select_network: gamma must be >= 0");

  const int p = s.dim();
  SelectionResult result;

  LambdaGrid grid;
  try {
    grid = lambda_grid(s.values, ratio, m);
  } catch (const AllZeroCorrelations&) {
    // No signal anywhere: the empty network is the only candidate.
    Matrix k = Matrix::Zero(p, p);
    for (int j = 0; j < p; ++j) k(j, j) = 1.0 / s.values(j, j);
    EbicEntry entry{0.0, 0, gaussian_loglik(k, s.values, n),
                    ebic(k, s.values, n, gamma)};
    result.network = PcorNetwork::empty(p);
    result.trace.entries.push_back(entry);
    result.trace.selected = 0;
    return result;
  }

  GlassoPath path = glasso_path(s.values, grid.values);
  result.path_monotonicity_violations = path.edge_monotonicity_violations;

  result.trace.entries.reserve(path.fits.size());
  int best = 0;
  double best_ebic = 0.0;
  for (std::size_t i = 0; i < path.fits.size(); ++i) {
    const PrecisionMatrix& fit = path.fits[i];
    result.all_converged = result.all_converged && fit.converged;
    result.diagonal_loaded = result.diagonal_loaded || fit.diagonal_loaded;
    EbicEntry entry;
    entry.lambda = fit.lambda;
    entry.edges = count_edges(fit.k);
    entry.loglik = gaussian_loglik(fit.k, s.values, n);
    entry.ebic = -2.0 * entry.loglik + entry.edges * std::log(n) +
                 4.0 * entry.edges * gamma * std::log(double(p));
    result.trace.entries.push_back(entry);
    // Ties within 1e-9 keep the earlier (larger lambda, sparser) fit.
    if (i == 0 || entry.ebic < best_ebic - 1e-9) {
      best = static_cast<int>(i);
      best_ebic = entry.ebic;
    }
  }
  result.trace.selected = best;
  result.network = precision_to_pcor(path.fits[best]);
  return result;
}

}  // namespace gelasso
