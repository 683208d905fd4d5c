#include "cfreal/dupire/ito_check.hpp"

#include <cmath>

#include "cfreal/paths/parallel.hpp"
#include "cfreal/paths/simulate.hpp"
#include "cfreal/symdiff/coefficients.hpp"

namespace cfreal {

bool RefinementSeries::decays(double min_ratio, double floor) const {
  for (std::size_t l = 0; l + 1 < rms.size(); ++l)
    if (!(rms[l + 1] <= floor || rms[l] >= min_ratio * rms[l + 1]))
      return false;
  return true;
}

namespace {
RefinementSeries finish(const std::vector<std::vector<double>> &sq) {
  // sq[level][rep] holds squared residuals.
  RefinementSeries s;
  for (const auto &level : sq) {
    double sum = 0;
    for (double v : level)
      sum += v;
    s.rms.push_back(std::sqrt(sum / static_cast<double>(level.size())));
  }
  for (std::size_t l = 0; l + 1 < s.rms.size(); ++l)
    s.ratios.push_back(s.rms[l + 1] > 0 ? s.rms[l] / s.rms[l + 1] : INFINITY);
  return s;
}

void check_config(const RefinementConfig &cfg) {
  if (cfg.levels < 1 || cfg.base_steps == 0 || cfg.replicates == 0 || !(cfg.horizon > 0))
    throw std::invalid_argument("refinement study: levels, grid, replicates and horizon must be positive");
}

std::vector<std::size_t> level_sizes(const RefinementConfig &cfg) {
  std::vector<std::size_t> sizes;
  for (int l = 0; l < cfg.levels; ++l)
    sizes.push_back(cfg.base_steps << l);
  return sizes;
}
} // namespace

StepResidual functional_ito_residual_path(const CausalFunctional &F, const QSpec &q, const SamplePath &path,
                                          double bump) {
  const int m = path.channels();
  if (F.channels() != m || q.dimension() != m)
    throw MismatchError("functional_ito_residual: functional, covariance and path dimensions differ");
  const std::size_t K = path.steps();
  const PathView w(path);
  std::vector<double> grad(static_cast<std::size_t>(m) * (K + 1)), hs(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    hs[k] = bump > 0 ? bump : default_bump(path, k);
    for (int i = 1; i <= m; ++i)
      grad[k * static_cast<std::size_t>(m) + static_cast<std::size_t>(i - 1)] =
          vertical_derivative(F, w, k, i, hs[k]);
  }
  const double delta = F.evaluate(K, w) - F.evaluate(0, w);
  StepResidual r;
  double drift = 0, ito = 0, strat = 0, qv = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const double dt = path.dt(k);
    drift += horizontal_derivative(F, w, k) * dt;
    const Eigen::MatrixXd &Q = q.at(path.grid[k]);
    for (int i = 1; i <= m; ++i) {
      const double dw = path.increment(k, i);
      const std::size_t a = k * static_cast<std::size_t>(m) + static_cast<std::size_t>(i - 1);
      ito += grad[a] * dw;
      strat += 0.5 * (grad[a] + grad[a + static_cast<std::size_t>(m)]) * dw;
      for (int j = 1; j <= m; ++j)
        qv += 0.5 * vertical_second_derivative(F, w, k, i, j, hs[k]) * Q(j - 1, i - 1) * dt;
    }
    r.mean_bump += hs[k];
  }
  r.mean_bump = K ? r.mean_bump / static_cast<double>(K) : hs[0];
  r.ito = delta - (drift + ito + qv);
  r.stratonovich = delta - (drift + strat);
  return r;
}

ItoResidualReport functional_ito_residual(const CausalFunctional &F, const QSpec &q, const RefinementConfig &cfg) {
  check_config(cfg);
  ItoResidualReport rep;
  rep.functional = F.name();
  rep.config = cfg;
  rep.grid_sizes = level_sizes(cfg);
  const auto L = static_cast<std::size_t>(cfg.levels);
  const std::size_t finest = rep.grid_sizes.back();
  std::vector<std::vector<double>> ito(L, std::vector<double>(cfg.replicates)), strat = ito, bumps = ito;
  parallel_for(cfg.replicates, [&](std::size_t r) {
    const SamplePath fine = sample_brownian(q, uniform_grid(cfg.horizon, finest), replicate_seed(cfg.seed, r));
    for (std::size_t l = 0; l < L; ++l) {
      const SamplePath p = subsample(fine, finest / rep.grid_sizes[l]);
      const StepResidual s = functional_ito_residual_path(F, q, p, cfg.bump);
      if (!std::isfinite(s.ito) || !std::isfinite(s.stratonovich))
        throw DivergenceError("functional_ito_residual: non-finite derivative estimates on replicate " +
                              std::to_string(r));
      ito[l][r] = s.ito * s.ito;
      strat[l][r] = s.stratonovich * s.stratonovich;
      bumps[l][r] = s.mean_bump;
    }
  });
  rep.ito = finish(ito);
  rep.stratonovich = finish(strat);
  for (const auto &b : bumps) {
    double sum = 0;
    for (double v : b)
      sum += v;
    rep.mean_bump.push_back(sum / static_cast<double>(b.size()));
  }
  return rep;
}

HijabReport hijab_decomposition_check(const AnalyticModel &model, const RefinementConfig &cfg) {
  model.validate();
  if (model.m != 1)
    throw MismatchError("hijab_decomposition_check: needs a single driving channel (m = 1)");
  check_config(cfg);
  HijabReport rep;
  rep.config = cfg;
  rep.grid_sizes = level_sizes(cfg);
  const MultiPoly z0 = lie_derivative(model.fields[0], model.readout);
  const MultiPoly z1 = lie_derivative(model.fields[1], model.readout);
  const MultiPoly z0_ito = z0 + Rational(1, 2) * lie_derivative(model.fields[1], z1);
  const CompiledPoly cz0(z0), cz1(z1), cz0i(z0_ito);
  const auto L = static_cast<std::size_t>(cfg.levels);
  const std::size_t finest = rep.grid_sizes.back();
  std::vector<std::vector<double>> strat(L, std::vector<double>(cfg.replicates)), ito = strat;
  parallel_for(cfg.replicates, [&](std::size_t r) {
    const SamplePath fine =
        sample_brownian(QSpec::identity(1), uniform_grid(cfg.horizon, finest), replicate_seed(cfg.seed, r));
    for (std::size_t l = 0; l < L; ++l) {
      const SamplePath p = subsample(fine, finest / rep.grid_sizes[l]);
      const Trajectory tr = simulate_analytic(model, p);
      const std::size_t K = p.steps();
      auto at = [&](const CompiledPoly &f, std::size_t k) {
        const Eigen::VectorXd x = tr.states.row(static_cast<Eigen::Index>(k)).transpose();
        return f(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
      };
      double ys = tr.output[0], yi = tr.output[0];
      for (std::size_t k = 0; k < K; ++k) {
        const double dt = p.dt(k), dw = p.increment(k, 1);
        const double a0 = at(cz0, k), a1 = at(cz0, k + 1), b0 = at(cz1, k), b1 = at(cz1, k + 1);
        ys += 0.5 * (a0 + a1) * dt + 0.5 * (b0 + b1) * dw;
        yi += at(cz0i, k) * dt + b0 * dw;
      }
      strat[l][r] = std::pow(ys - tr.output[K], 2);
      ito[l][r] = std::pow(yi - tr.output[K], 2);
    }
  });
  rep.stratonovich = finish(strat);
  rep.ito = finish(ito);
  return rep;
}

} // namespace cfreal
