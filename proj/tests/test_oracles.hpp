#pragma once

// Independent oracles used by the test suite only. Each one deliberately
// takes a different algorithmic route than the library code it checks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gelasso/linalg.hpp"

namespace gelasso::testing {

// Cyclic Jacobi rotations; independent of Eigen's eigensolver.
inline std::vector<double> jacobi_eigenvalues(Matrix a, int sweeps = 100) {
  const Eigen::Index n = a.rows();
  for (int s = 0; s < sweeps; ++s) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eigs(n);
  for (Eigen::Index i = 0; i < n; ++i) eigs[i] = a(i, i);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

// Proximal-gradient (ISTA) maximization of
//   log det K - tr(S K) - lambda * sum_{i!=j} |k_ij|
// with backtracking line search; a slow brute-force route to the same
// optimum the block coordinate descent solver targets.
inline Matrix ista_glasso(const Matrix& s, double lambda,
                          int max_iter = 300000, double tol = 1e-11) {
  const Eigen::Index p = s.rows();
  Matrix k = Matrix::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) k(j, j) = 1.0 / s(j, j);

  const auto objective = [&](const Matrix& kk) {
    Eigen::LLT<Matrix> llt(kk);
    if (llt.info() != Eigen::Success)
      return -std::numeric_limits<double>::infinity();
    const double logdet =
        2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    double l1 = 0.0;
    for (Eigen::Index j = 0; j < p; ++j)
      for (Eigen::Index i = 0; i < p; ++i)
        if (i != j) l1 += std::abs(kk(i, j));
    return logdet - (s.array() * kk.array()).sum() - lambda * l1;
  };

  double step = 1.0;
  double obj = objective(k);
  for (int it = 0; it < max_iter; ++it) {
    const Matrix grad = k.inverse() - s;  // ascent direction of the smooth part
    Matrix next;
    double next_obj = 0.0;
    while (true) {
      next = k + step * grad;
      for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index i = 0; i < p; ++i) {
          if (i == j) continue;
          const double t = step * lambda;
          double v = next(i, j);
          v = v > t ? v - t : (v < -t ? v + t : 0.0);
          next(i, j) = v;
        }
      }
      next = 0.5 * (next + next.transpose()).eval();
      next_obj = objective(next);
      if (next_obj >= obj - 1e-14) break;
      step *= 0.5;
      if (step < 1e-14) break;
    }
    if (step < 1e-14) break;
    const double move = (next - k).cwiseAbs().maxCoeff();
    k = next;
    obj = next_obj;
    step *= 1.1;
    if (move < tol) break;
  }
  return k;
}

// Random PD correlation matrix: Wishart-style Gram matrix, rescaled to a
// unit diagonal.
template <typename RngT>
Matrix random_correlation(RngT& rng, int p, int gram_rows = 0) {
  if (gram_rows <= 0) gram_rows = 2 * p + 4;
  Matrix g(gram_rows, p);
  for (int r = 0; r < gram_rows; ++r)
    for (int j = 0; j < p; ++j) g(r, j) = rng.normal();
  Matrix s = g.transpose() * g / static_cast<double>(gram_rows);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i)
      if (i != j) s(i, j) /= std::sqrt(s(i, i) * s(j, j));
  for (int j = 0; j < p; ++j) s(j, j) = 1.0;
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < j; ++i) s(j, i) = s(i, j);
  return s;
}

// Partial correlation of (i, j) given all other variables, from the Schur
// complement of the covariance (regression-residual route) rather than the
// inverse-precision formula.
inline double pcor_schur(const Matrix& sigma, Eigen::Index i, Eigen::Index j) {
  const Eigen::Index p = sigma.rows();
  std::vector<Eigen::Index> rest;
  for (Eigen::Index k = 0; k < p; ++k)
    if (k != i && k != j) rest.push_back(k);
  const Eigen::Index m = static_cast<Eigen::Index>(rest.size());
  if (m == 0)
    return sigma(i, j) / std::sqrt(sigma(i, i) * sigma(j, j));

  Matrix srr(m, m);
  Vector sri(m), srj(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    sri(a) = sigma(rest[a], i);
    srj(a) = sigma(rest[a], j);
    for (Eigen::Index b = 0; b < m; ++b) srr(a, b) = sigma(rest[a], rest[b]);
  }
  const Matrix srr_inv = srr.inverse();
  const double cii = sigma(i, i) - sri.dot(srr_inv * sri);
  const double cjj = sigma(j, j) - srj.dot(srr_inv * srj);
  const double cij = sigma(i, j) - sri.dot(srr_inv * srj);
  return cij / std::sqrt(cii * cjj);
}

}  // namespace gelasso::testing
