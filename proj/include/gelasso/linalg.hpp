#pragma once

#include <Eigen/Dense>

namespace gelasso {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

// True when M passes a Cholesky factorization.
bool is_positive_definite(const Matrix& m);

// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& m);

// log(det M) for symmetric positive-definite M, via Cholesky.
// Throws NotPD when the factorization fails.
double logdet_pd(const Matrix& m);

// Inverse of a symmetric positive-definite matrix, via Cholesky.
Matrix inverse_pd(const Matrix& m);

// max |m_ij - m_ji|.
double symmetry_gap(const Matrix& m);

// Copies the upper triangle onto the lower one, making symmetry exact.
void symmetrize(Matrix& m);

}  // namespace gelasso
