#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cfreal/symdiff/polynomial.hpp"

namespace cfreal {

/// Quadratic-variation rate of the driving noise, [W](t) = int_0^t Q(s) ds.
/// Either constant or piecewise constant: mats[k] applies on [breaks[k], breaks[k+1]).
class QSpec {
public:
  /// Throws MismatchError unless q is square, symmetric and positive definite.
  static QSpec constant(const Eigen::MatrixXd &q);
  static QSpec identity(int m) { return constant(Eigen::MatrixXd::Identity(m, m)); }
  /// breaks must start at 0 and increase strictly; one matrix per break.
  static QSpec piecewise(std::vector<double> breaks, std::vector<Eigen::MatrixXd> mats);

  int dimension() const noexcept { return static_cast<int>(mats_.front().rows()); }
  bool is_constant() const noexcept { return mats_.size() == 1; }
  const Eigen::MatrixXd &at(double t) const { return mats_[piece(t)]; }
  /// Lower Cholesky factor of at(t).
  const Eigen::MatrixXd &factor(double t) const { return factors_[piece(t)]; }

private:
  std::size_t piece(double t) const;
  std::vector<double> breaks_;
  std::vector<Eigen::MatrixXd> mats_, factors_;
};

/// Uniform grid t_j = j T / J, j = 0..J.
std::vector<double> uniform_grid(double horizon, std::size_t steps);

/// Driving path: values(j, i-1) = W_i(t_j), W(0) = 0.
struct SamplePath {
  std::vector<double> grid;
  Eigen::MatrixXd values; ///< (J+1) x m

  int channels() const noexcept { return static_cast<int>(values.cols()); }
  std::size_t steps() const noexcept { return grid.size() - 1; }
  double dt(std::size_t j) const { return grid[j + 1] - grid[j]; }
  /// Increment of W_i over cell j; W_0 is time.
  double increment(std::size_t j, int i) const {
    return i == 0 ? dt(j) : values(static_cast<Eigen::Index>(j + 1), i - 1) - values(static_cast<Eigen::Index>(j), i - 1);
  }
  /// Throws MismatchError on a malformed grid or nonzero start.
  void validate() const;
};

/// Every stride-th grid point of a path (stride must divide J).
SamplePath subsample(const SamplePath &path, std::size_t stride);

/// Per-replicate generator seed for replicate r of a run seeded with `seed`.
inline std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t rep) { return seed ^ rep; }

/// Gaussian increments with covariance Q(t_j) dt_j.
SamplePath sample_brownian(const QSpec &q, const std::vector<double> &grid, std::uint64_t seed);

/// Euler-Maruyama path of dW' = b(W') dt + sigma dB. Its quadratic-variation
/// rate is sigma sigma^T (returned through qv when given).
SamplePath sample_diffusion_input(const PolyVectorField &b, const Eigen::MatrixXd &sigma,
                                  const std::vector<double> &grid, std::uint64_t seed, QSpec *qv = nullptr);

} // namespace cfreal
