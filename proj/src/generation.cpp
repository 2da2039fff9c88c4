#include "gelasso/generation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Cholesky>

#include "gelasso/errors.hpp"
#include "gelasso/kernels.hpp"
#include "gelasso/rng.hpp"

namespace gelasso {

namespace {

constexpr double kRepairEigFloor = 1e-6;

Matrix implied_precision(const Matrix& weights) {
  Matrix k = -weights;
  k.diagonal().setOnes();
  return k;
}

}  // namespace

TrueNetwork threshold_network(const Matrix& pcor, double cutoff) {
  const Eigen::Index p = pcor.rows();
  if (pcor.cols() != p) throw InputError("threshold_network: matrix not square");
  if (symmetry_gap(pcor) > 1e-10)
    throw InputError("threshold_network: matrix not symmetric");
  if (pcor.diagonal().cwiseAbs().maxCoeff() > 1e-12)
    throw InputError("threshold_network: diagonal must be zero");

  TrueNetwork net;
  net.network.weights = pcor;
  symmetrize(net.network.weights);
  net.network.weights.diagonal().setZero();
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < p; ++i)
      if (i != j && std::abs(net.network.weights(i, j)) < cutoff)
        net.network.weights(i, j) = 0.0;

  // The implied precision is I + s*(K - I) under uniform off-diagonal
  // shrinkage by s, and K - I shares eigenvectors with K, so the exact
  // smallest admissible factor is available in closed form.
  const Matrix k = implied_precision(net.network.weights);
  const double min_eig = min_eigenvalue(k);
  if (min_eig < kRepairEigFloor) {
    const double mu_min = min_eig - 1.0;  // smallest eigenvalue of K - I
    if (!(mu_min < 0.0))
      throw NotRepairable("threshold_network: degenerate spectrum");
    const double s = (1.0 - kRepairEigFloor) / (-mu_min);
    if (!(s > 0.0) || !std::isfinite(s))
      throw NotRepairable("threshold_network: no shrink factor restores PD");
    net.network.weights *= s;
    net.shrunk = true;
    net.shrink_factor = s;
  }
  return net;
}

Matrix pcor_to_covariance(const TrueNetwork& net) {
  const Matrix k = implied_precision(net.network.weights);
  const double min_eig = min_eigenvalue(k);
  if (min_eig <= 0.0) throw NotPD(min_eig);
  Matrix sigma = inverse_pd(k);
  const Vector d = sigma.diagonal().cwiseSqrt();
  for (Eigen::Index j = 0; j < sigma.cols(); ++j)
    for (Eigen::Index i = 0; i < sigma.rows(); ++i)
      sigma(i, j) /= d(i) * d(j);
  symmetrize(sigma);
  sigma.diagonal().setOnes();
  return sigma;
}

Matrix sample_mvn(const Matrix& sigma, int n, std::uint64_t seed) {
  const Eigen::Index p = sigma.rows();
  if (n < 1) throw InputError("sample_mvn: need n >= 1");
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) throw NotPD(min_eigenvalue(sigma));

  // Row-major copy of L so each output row is p prefix dot products.
  const Matrix l = llt.matrixL();
  std::vector<double> lrow(static_cast<std::size_t>(p) * p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) lrow[i * p + j] = l(i, j);

  Rng rng(seed);
  Matrix out(n, p);
  Vector z(p);
  for (int r = 0; r < n; ++r) {
    for (Eigen::Index j = 0; j < p; ++j) z(j) = rng.normal();
    for (Eigen::Index i = 0; i < p; ++i)
      out(r, i) = kern::dot(&lrow[i * p], z.data(), i + 1);
  }
  return out;
}

OrdinalScheme make_ordinal_scheme(int p, std::uint64_t seed) {
  if (p < 1) throw InputError("make_ordinal_scheme: need p >= 1");
  Rng rng(seed);
  OrdinalScheme scheme;
  scheme.levels = 5;
  scheme.thresholds.cuts.resize(p);
  for (int j = 0; j < p; ++j) {
    auto& cuts = scheme.thresholds.cuts[j];
    cuts.resize(4);
    for (double& c : cuts) c = rng.normal();
    std::sort(cuts.begin(), cuts.end());
  }
  return scheme;
}

IntMatrix discretize(const Matrix& data, const OrdinalScheme& scheme) {
  const Eigen::Index p = data.cols();
  if (static_cast<Eigen::Index>(scheme.thresholds.cuts.size()) != p)
    throw DimensionMismatch("discretize: scheme does not cover all columns");

  IntMatrix out(data.rows(), p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& cuts = scheme.thresholds.cuts[j];
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
      int level = 1;
      for (double c : cuts)
        if (c < data(r, j)) ++level;
      out(r, j) = level;
    }
  }
  return out;
}

TrueNetwork synthetic_true_network(int p, double density, std::uint64_t seed) {
  if (p < 2) throw InputError("synthetic_true_network: need p >= 2");
  if (!(density > 0.0 && density < 1.0))
    throw InputError("synthetic_true_network: density must lie in (0, 1)");

  const int pairs = p * (p - 1) / 2;
  const int edges = std::max(1, static_cast<int>(std::lround(density * pairs)));

  // Cluster nodes into blocks of ~5 (inventory-scale facets). Edges land
  // within blocks first, with strong weights; the remaining budget spills
  // across blocks with weak weights near the 0.05 floor. Concentrating the
  // strong weights is what keeps the implied precision comfortably PD at
  // paper-scale densities.
  const int nblocks = (p + 4) / 5;
  const int base_size = p / nblocks;
  const int oversized = p % nblocks;
  std::vector<int> block_of(p);
  {
    int node = 0;
    for (int b = 0; b < nblocks; ++b) {
      const int size = base_size + (b < oversized ? 1 : 0);
      for (int s = 0; s < size; ++s) block_of[node++] = b;
    }
  }
  std::vector<std::pair<int, int>> in_pairs, cross_pairs;
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < j; ++i)
      (block_of[i] == block_of[j] ? in_pairs : cross_pairs).emplace_back(i, j);

  const int n_strong = std::min<int>(edges, static_cast<int>(in_pairs.size()));
  const int n_weak = edges - n_strong;

  Rng rng(mix64(seed));
  const auto take = [&rng](std::vector<std::pair<int, int>>& from, int count) {
    for (int k = 0; k < count; ++k) {
      const auto swap_with =
          k + rng.below(static_cast<std::uint64_t>(from.size() - k));
      std::swap(from[k], from[swap_with]);
    }
  };

  // Weight ranges back off across retries until PD; never below 0.05.
  for (int attempt = 0; attempt < 400; ++attempt) {
    const double shrink = std::pow(0.98, attempt);
    const double strong_lo = std::max(0.05, 0.16 * shrink);
    const double strong_hi = std::max(strong_lo + 0.01, 0.28 * shrink);
    const double weak_hi = std::max(0.051, 0.053 * shrink);

    take(in_pairs, n_strong);
    take(cross_pairs, n_weak);

    Matrix w = Matrix::Zero(p, p);
    for (int k = 0; k < n_strong; ++k) {
      const auto [i, j] = in_pairs[k];
      const double mag = strong_lo + (strong_hi - strong_lo) * rng.uniform();
      const double sign = rng.uniform() < 0.85 ? 1.0 : -1.0;
      w(i, j) = sign * mag;
      w(j, i) = w(i, j);
    }
    for (int k = 0; k < n_weak; ++k) {
      const auto [i, j] = cross_pairs[k];
      const double mag = 0.05 + (weak_hi - 0.05) * rng.uniform();
      const double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
      w(i, j) = sign * mag;
      w(j, i) = w(i, j);
    }
    if (min_eigenvalue(implied_precision(w)) >= 0.05) {
      TrueNetwork net;
      net.network.weights = std::move(w);
      net.provenance = "synthetic(p=" + std::to_string(p) +
                       ", density=" + std::to_string(density) +
                       ", seed=" + std::to_string(seed) + ")";
      return net;
    }
  }
  throw GenerationFailed(
      "synthetic_true_network: no PD-valid draw within the retry budget");
}

}  // namespace gelasso
