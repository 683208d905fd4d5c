#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cfreal/paths/sample_path.hpp"
#include "cfreal/symdiff/model.hpp"

namespace cfreal {

enum class Scheme {
  heun,    ///< Stratonovich predictor-corrector
  ito_euler ///< Euler-Maruyama on the Ito-converted drift
};

struct SimulationOptions {
  Scheme scheme = Scheme::heun;
  double divergence_bound = 1e12;
  /// Quadratic-variation rate for the Ito conversion; identity when absent.
  std::optional<linalg::RationalMatrix> q;
};

struct Trajectory {
  Eigen::MatrixXd states; ///< (J+1) x n
  std::vector<double> output;
};

/// Throws DivergenceError once max |X_k| exceeds the bound.
Trajectory simulate_analytic(const AnalyticModel &model, const SamplePath &path, const SimulationOptions &opts = {});
Trajectory simulate_bilinear(const BilinearModel &model, const SamplePath &path, const SimulationOptions &opts = {});

} // namespace cfreal
