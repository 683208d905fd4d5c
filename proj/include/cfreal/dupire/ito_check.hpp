#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfreal/dupire/functional.hpp"
#include "cfreal/symdiff/model.hpp"

namespace cfreal {

/// Residuals below this are treated as rounding noise when judging decay.
inline constexpr double kResidualFloor = 1e-10;

/// RMS residual per grid level (coarse to fine) and successive ratios.
struct RefinementSeries {
  std::vector<double> rms;
  std::vector<double> ratios; ///< rms[l] / rms[l+1]
  /// Every halving improves by min_ratio, or the finer level already sits at the floor.
  bool decays(double min_ratio = 1.2, double floor = kResidualFloor) const;
};

struct RefinementConfig {
  double horizon = 1.0;
  std::size_t base_steps = 512; ///< coarsest grid J; level l uses base_steps * 2^l
  int levels = 3;
  std::size_t replicates = 200;
  std::uint64_t seed = 0;
  double bump = 0; ///< vertical bump; 0 selects default_bump per step
};

struct ItoResidualReport {
  std::string functional;
  RefinementConfig config;
  std::vector<std::size_t> grid_sizes;
  std::vector<double> mean_bump; ///< averaged over steps and replicates, per level
  RefinementSeries ito, stratonovich;
};

struct StepResidual {
  double ito = 0, stratonovich = 0;
  double mean_bump = 0;
};

/// F(t_K) - F(0) minus the discretized functional Ito expansion along one path
/// (left-point horizontal and Ito terms, Q_ji-weighted second-order term), and
/// the Stratonovich companion with trapezoid stochastic integrals.
StepResidual functional_ito_residual_path(const CausalFunctional &F, const QSpec &q, const SamplePath &path,
                                          double bump = 0);

/// Monte Carlo refinement study; each replicate draws one path on the finest
/// grid and evaluates coarser levels by subsampling it.
ItoResidualReport functional_ito_residual(const CausalFunctional &F, const QSpec &q, const RefinementConfig &cfg);

struct HijabReport {
  RefinementConfig config;
  std::vector<std::size_t> grid_sizes;
  RefinementSeries stratonovich; ///< Y(0) + int Z0 ds + int Z1 o dW
  RefinementSeries ito;          ///< Y(0) + int (Z0 + L1L1h/2) ds + int Z1 dW
};

/// Checks the drift/diffusion decompositions of Y = h(X) for an m = 1 model
/// driven by standard Brownian motion.
HijabReport hijab_decomposition_check(const AnalyticModel &model, const RefinementConfig &cfg);

} // namespace cfreal
