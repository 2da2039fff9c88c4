#include "gelasso/glasso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gelasso/errors.hpp"
#include "gelasso/kernels.hpp"

namespace gelasso {

namespace {

constexpr double kZeroSnap = 1e-10;
constexpr double kKktTarget = 1e-4;
constexpr int kMaxSweeps = 10000;
constexpr int kMaxInnerIter = 1000;

inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

double mean_abs_offdiag(const Matrix& s) {
  const Eigen::Index p = s.rows();
  if (p < 2) return 0.0;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < j; ++i) acc += std::abs(s(i, j));
  return 2.0 * acc / (double(p) * double(p - 1));
}

}  // namespace

int PcorNetwork::edge_count() const {
  int count = 0;
  for (Eigen::Index j = 0; j < weights.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      if (weights(i, j) != 0.0) ++count;
  return count;
}

double glasso_objective(const Matrix& k, const Matrix& s, double lambda) {
  const Eigen::Index p = k.rows();
  double l1 = 0.0;
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < j; ++i) l1 += std::abs(k(i, j));
  const double trace_sk =
      kern::dot(s.data(), k.data(), static_cast<std::size_t>(p) * p);
  return logdet_pd(k) - trace_sk - 2.0 * lambda * l1;
}

double kkt_residual(const Matrix& k, const Matrix& s, double lambda) {
  const Matrix w = inverse_pd(k);
  const Eigen::Index p = k.rows();
  double r = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    r = std::max(r, std::abs(w(j, j) - s(j, j)));
    for (Eigen::Index i = 0; i < j; ++i) {
      const double g = w(i, j) - s(i, j);
      if (k(i, j) != 0.0)
        r = std::max(r, std::abs(g - lambda * (k(i, j) > 0 ? 1.0 : -1.0)));
      else
        r = std::max(r, std::max(0.0, std::abs(g) - lambda));
    }
  }
  return r;
}

PrecisionMatrix glasso_fit(const Matrix& s, double lambda,
                           const PrecisionMatrix* warm_start) {
  const Eigen::Index p = s.rows();
  if (p < 1 || s.cols() != p) throw InputError("glasso_fit: S must be square");
  if (symmetry_gap(s) > 1e-10) throw InputError("glasso_fit: S must be symmetric");
  if (!(lambda >= 0.0)) throw InputError("glasso_fit: lambda must be >= 0");

  PrecisionMatrix result;
  result.lambda = lambda;

  Matrix sw = s;
  symmetrize(sw);
  {
    const double min_eig = min_eigenvalue(sw);
    if (min_eig <= 0.0) {
      sw.diagonal().array() += std::abs(min_eig) + 1e-8;
      result.diagonal_loaded = true;
    }
    if (!is_positive_definite(sw))
      throw NonPDInput("glasso_fit: S not workable even with diagonal loading");
  }

  if (p == 1) {
    result.k = Matrix::Constant(1, 1, 1.0 / sw(0, 0));
    return result;
  }

  const Eigen::Index q = p - 1;
  Matrix w = sw;
  Matrix betas = Matrix::Zero(q, p);  // column j: lasso coefficients for j
  if (warm_start != nullptr) {
    const Matrix& k0 = warm_start->k;
    if (k0.rows() != p || k0.cols() != p)
      throw DimensionMismatch("glasso_fit: warm start has wrong dimension");
    try {
      w = inverse_pd(k0);
      w.diagonal() = sw.diagonal();
      symmetrize(w);
      for (Eigen::Index j = 0; j < p; ++j) {
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < p; ++i) {
          if (i == j) continue;
          betas(r++, j) = -k0(i, j) / k0(j, j);
        }
      }
    } catch (const NotPD&) {
      // Unusable warm start (e.g. an unconverged previous fit): cold start.
      w = sw;
      betas.setZero();
    }
  }

  const double mean_off_s = mean_abs_offdiag(sw);
  double w_tol = 1e-6 * mean_off_s;

  Matrix v(q, q);
  Vector s12(q), beta(q), g(q), w12_old(q);

  int total_sweeps = 0;
  bool kkt_ok = false;
  bool have_k = false;
  while (total_sweeps < kMaxSweeps && !kkt_ok) {
    const double inner_tol = std::max(0.1 * w_tol, 1e-15);
    // Sweep until the working covariance stalls under the current tol.
    while (total_sweeps < kMaxSweeps) {
      ++total_sweeps;
      double change = 0.0;
      for (Eigen::Index j = 0; j < p; ++j) {
        // Compact W11, S12 and the current beta for this column.
        Eigen::Index rr = 0;
        for (Eigen::Index i = 0; i < p; ++i) {
          if (i == j) continue;
          Eigen::Index cc = 0;
          for (Eigen::Index k2 = 0; k2 < p; ++k2) {
            if (k2 == j) continue;
            v(cc++, rr) = w(k2, i);
          }
          s12(rr) = sw(i, j);
          beta(rr) = betas(rr, j);
          w12_old(rr) = w(i, j);
          ++rr;
        }

        // g = W11 beta, kept in sync with coordinate updates.
        g.setZero();
        for (Eigen::Index k2 = 0; k2 < q; ++k2)
          if (beta(k2) != 0.0)
            kern::axpy(beta(k2), v.col(k2).data(), g.data(), q);

        for (int inner = 0; inner < kMaxInnerIter; ++inner) {
          double max_dbeta = 0.0;
          for (Eigen::Index k2 = 0; k2 < q; ++k2) {
            const double vkk = v(k2, k2);
            const double z = s12(k2) - (g(k2) - vkk * beta(k2));
            const double bnew = soft_threshold(z, lambda) / vkk;
            const double diff = bnew - beta(k2);
            if (diff != 0.0) {
              kern::axpy(diff, v.col(k2).data(), g.data(), q);
              beta(k2) = bnew;
              max_dbeta = std::max(max_dbeta, std::abs(diff));
            }
          }
          if (max_dbeta <= inner_tol) break;
        }

        // w12 = W11 beta = g; write both triangles.
        Eigen::Index r2 = 0;
        for (Eigen::Index i = 0; i < p; ++i) {
          if (i == j) continue;
          change += std::abs(g(r2) - w12_old(r2));
          w(i, j) = g(r2);
          w(j, i) = g(r2);
          betas(r2, j) = beta(r2);
          ++r2;
        }
      }
      const double mean_change = change / (double(p) * double(p - 1));
      if (mean_change <= w_tol) break;
    }

    // Recover K from (W, betas).
    Matrix k_try = Matrix::Zero(p, p);
    bool recovery_ok = true;
    for (Eigen::Index j = 0; j < p; ++j) {
      double dot_wb = 0.0;
      Eigen::Index rr = 0;
      for (Eigen::Index i = 0; i < p; ++i) {
        if (i == j) continue;
        dot_wb += w(i, j) * betas(rr, j);
        ++rr;
      }
      const double denom = w(j, j) - dot_wb;
      if (!(denom > 0.0)) {
        recovery_ok = false;
        break;
      }
      const double kjj = 1.0 / denom;
      k_try(j, j) = kjj;
      rr = 0;
      for (Eigen::Index i = 0; i < p; ++i) {
        if (i == j) continue;
        k_try(i, j) = -betas(rr, j) * kjj;
        ++rr;
      }
    }
    if (recovery_ok) {
      k_try = 0.5 * (k_try + k_try.transpose()).eval();
      for (Eigen::Index j = 0; j < p; ++j)
        for (Eigen::Index i = 0; i < p; ++i)
          if (i != j && std::abs(k_try(i, j)) < kZeroSnap) k_try(i, j) = 0.0;
      result.k = std::move(k_try);
      have_k = true;
      try {
        kkt_ok = kkt_residual(result.k, sw, lambda) <= kKktTarget;
      } catch (const NotPD&) {
        kkt_ok = false;
      }
    }
    if (!kkt_ok) w_tol *= 0.1;  // not there yet: sweep tighter
  }

  result.sweeps = total_sweeps;
  result.converged = kkt_ok;
  if (!have_k) {
    // Recovery never succeeded; fall back to the loaded-inverse iterate so
    // callers still get a usable (if unconverged) matrix.
    result.k = inverse_pd(sw);
    result.converged = false;
  }
  return result;
}

GlassoPath glasso_path(const Matrix& s, const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw InputError("glasso_path: empty lambda vector");
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (lambdas[i] > lambdas[i - 1])
      throw InputError("glasso_path: lambdas must be sorted descending");

  GlassoPath path;
  path.fits.reserve(lambdas.size());
  int prev_edges = -1;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    try {
      const PrecisionMatrix* warm = path.fits.empty() ? nullptr : &path.fits.back();
      path.fits.push_back(glasso_fit(s, lambdas[i], warm));
    } catch (const Error& e) {
      throw NumericalError("glasso_path: fit at lambda index " +
                           std::to_string(i) + " (lambda=" +
                           std::to_string(lambdas[i]) + ") failed: " + e.what());
    }
    const int edges = precision_to_pcor(path.fits.back()).edge_count();
    if (prev_edges >= 0 && edges < prev_edges)
      path.edge_monotonicity_violations.push_back(static_cast<int>(i));
    prev_edges = edges;
  }
  return path;
}

PcorNetwork precision_to_pcor(const Matrix& k) {
  const Eigen::Index p = k.rows();
  if (p < 1 || k.cols() != p)
    throw InputError("precision_to_pcor: K must be square");
  for (Eigen::Index j = 0; j < p; ++j)
    if (!(k(j, j) > 0.0))
      throw NonPositiveDiagonal("precision_to_pcor: diagonal entry " +
                                std::to_string(j) + " is not positive");

  PcorNetwork net{Matrix::Zero(p, p)};
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (k(i, j) == 0.0) continue;
      const double w = -k(i, j) / std::sqrt(k(i, i) * k(j, j));
      net.weights(i, j) = w;
      net.weights(j, i) = w;
    }
  }
  return net;
}

}  // namespace gelasso
