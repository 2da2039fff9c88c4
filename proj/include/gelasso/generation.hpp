#pragma once

#include <cstdint>
#include <string>

#include "gelasso/correlation.hpp"
#include "gelasso/glasso.hpp"
#include "gelasso/linalg.hpp"

namespace gelasso {

// A ground-truth partial-correlation network for simulation.
struct TrueNetwork {
  PcorNetwork network;
  std::string provenance;
  bool shrunk = false;         // PD repair rescaled the weights
  double shrink_factor = 1.0;
};

// Thresholds drawn for ordinal data generation: levels-1 sorted cuts per
// variable.
struct OrdinalScheme {
  ThresholdSet thresholds;
  int levels = 5;
};

// Zeroes all |weights| strictly below the cutoff, keeps the rest verbatim,
// then validates that the implied precision (unit diagonal, -w off-diag)
// is positive definite. If it is not, all off-diagonals are shrunk by the
// smallest uniform factor restoring min eigenvalue >= 1e-6 (recorded in
// the result).
TrueNetwork threshold_network(const Matrix& pcor, double cutoff);

// Unit-diagonal correlation matrix whose standardized negated inverse
// reproduces the network: build K (k_ii = 1, k_ij = -w_ij), invert,
// rescale. Round-trips through precision_to_pcor to within 1e-8.
Matrix pcor_to_covariance(const TrueNetwork& net);

// n rows of zero-mean draws with covariance sigma, via the Cholesky
// transform of standard normals; byte-deterministic for a given seed.
Matrix sample_mvn(const Matrix& sigma, int n, std::uint64_t seed);

// Four iid standard-normal thresholds per variable, sorted.
OrdinalScheme make_ordinal_scheme(int p, std::uint64_t seed);

// level = 1 + number of thresholds strictly below the value.
IntMatrix discretize(const Matrix& data, const OrdinalScheme& scheme);

// Sparse random truth with approximately the requested edge density, all
// |weights| >= 0.05 and a comfortably PD implied precision. Used as the
// stand-in simulation ground truth; defaults elsewhere are p = 25,
// density = 125/300.
TrueNetwork synthetic_true_network(int p, double density, std::uint64_t seed);

}  // namespace gelasso
