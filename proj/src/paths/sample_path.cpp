#include "cfreal/paths/sample_path.hpp"

#include <algorithm>
#include <random>

#include "cfreal/errors.hpp"

namespace cfreal {

namespace {
Eigen::MatrixXd checked_factor(const Eigen::MatrixXd &q) {
  if (q.rows() == 0 || q.rows() != q.cols())
    throw MismatchError("QSpec: matrix must be square and nonempty");
  if ((q - q.transpose()).norm() > 1e-12 * (1.0 + q.norm()))
    throw MismatchError("QSpec: matrix is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(q);
  if (llt.info() != Eigen::Success)
    throw MismatchError("QSpec: matrix is not positive definite");
  return llt.matrixL();
}
} // namespace

QSpec QSpec::constant(const Eigen::MatrixXd &q) {
  QSpec s;
  s.breaks_ = {0.0};
  s.factors_.push_back(checked_factor(q));
  s.mats_.push_back(q);
  return s;
}

QSpec QSpec::piecewise(std::vector<double> breaks, std::vector<Eigen::MatrixXd> mats) {
  if (breaks.empty() || breaks.size() != mats.size())
    throw MismatchError("QSpec: need one matrix per breakpoint");
  if (breaks.front() != 0.0)
    throw MismatchError("QSpec: first breakpoint must be 0");
  for (std::size_t k = 1; k < breaks.size(); ++k)
    if (!(breaks[k] > breaks[k - 1]))
      throw MismatchError("QSpec: breakpoints must increase strictly");
  QSpec s;
  for (const auto &q : mats) {
    if (q.rows() != mats.front().rows())
      throw MismatchError("QSpec: matrices differ in dimension");
    s.factors_.push_back(checked_factor(q));
  }
  s.breaks_ = std::move(breaks);
  s.mats_ = std::move(mats);
  return s;
}

std::size_t QSpec::piece(double t) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  return it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

std::vector<double> uniform_grid(double horizon, std::size_t steps) {
  if (!(horizon > 0) && steps > 0)
    throw std::invalid_argument("uniform_grid: horizon must be positive");
  std::vector<double> g(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j)
    g[j] = horizon * static_cast<double>(j) / static_cast<double>(steps == 0 ? 1 : steps);
  return g;
}

void SamplePath::validate() const {
  if (grid.empty() || grid.front() != 0.0)
    throw MismatchError("SamplePath: grid must start at 0");
  for (std::size_t j = 1; j < grid.size(); ++j)
    if (!(grid[j] > grid[j - 1]))
      throw MismatchError("SamplePath: grid must increase strictly");
  if (static_cast<std::size_t>(values.rows()) != grid.size())
    throw MismatchError("SamplePath: one value row per grid point required");
  if (values.rows() > 0 && !values.row(0).isZero(0.0))
    throw MismatchError("SamplePath: path must start at the origin");
}

namespace {
void check_grid(const std::vector<double> &grid) {
  SamplePath probe;
  probe.grid = grid;
  probe.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(grid.size()), 1);
  probe.validate();
}
} // namespace

SamplePath subsample(const SamplePath &path, std::size_t stride) {
  if (stride == 0 || path.steps() % stride != 0)
    throw std::invalid_argument("subsample: stride must divide the number of steps");
  SamplePath out;
  const std::size_t steps = path.steps() / stride;
  out.grid.resize(steps + 1);
  out.values.resize(static_cast<Eigen::Index>(steps + 1), path.values.cols());
  for (std::size_t j = 0; j <= steps; ++j) {
    out.grid[j] = path.grid[j * stride];
    out.values.row(static_cast<Eigen::Index>(j)) = path.values.row(static_cast<Eigen::Index>(j * stride));
  }
  return out;
}

SamplePath sample_brownian(const QSpec &q, const std::vector<double> &grid, std::uint64_t seed) {
  check_grid(grid);
  const int m = q.dimension();
  SamplePath p;
  p.grid = grid;
  p.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(grid.size()), m);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(m);
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    for (int i = 0; i < m; ++i)
      z[i] = normal(gen);
    const Eigen::Index r = static_cast<Eigen::Index>(j);
    p.values.row(r + 1) = p.values.row(r) + (std::sqrt(p.dt(j)) * (q.factor(grid[j]) * z)).transpose();
  }
  return p;
}

SamplePath sample_diffusion_input(const PolyVectorField &b, const Eigen::MatrixXd &sigma,
                                  const std::vector<double> &grid, std::uint64_t seed, QSpec *qv) {
  const Eigen::Index m = sigma.rows();
  if (m == 0 || sigma.cols() != m || static_cast<Eigen::Index>(b.size()) != m)
    throw MismatchError("sample_diffusion_input: drift and sigma dimensions differ");
  if (std::abs(sigma.determinant()) == 0.0)
    throw MismatchError("sample_diffusion_input: sigma is not invertible");
  const QSpec q = QSpec::constant(sigma * sigma.transpose());
  if (qv)
    *qv = q;
  std::vector<CompiledPoly> drift;
  for (const auto &c : b) {
    if (c.num_vars() != static_cast<std::size_t>(m))
      throw MismatchError("sample_diffusion_input: drift polynomials must use the path dimension");
    drift.emplace_back(c);
  }
  // Unit-covariance driver, mapped through sigma.
  const SamplePath base = sample_brownian(QSpec::identity(static_cast<int>(m)), grid, seed);
  SamplePath p;
  p.grid = grid;
  p.values = Eigen::MatrixXd::Zero(base.values.rows(), m);
  std::vector<double> x(static_cast<std::size_t>(m));
  Eigen::VectorXd db(m), bx(m);
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const Eigen::Index r = static_cast<Eigen::Index>(j);
    for (Eigen::Index i = 0; i < m; ++i)
      x[static_cast<std::size_t>(i)] = p.values(r, i);
    for (Eigen::Index i = 0; i < m; ++i) {
      bx[i] = drift[static_cast<std::size_t>(i)](x);
      db[i] = base.values(r + 1, i) - base.values(r, i);
    }
    p.values.row(r + 1) = p.values.row(r) + (bx * p.dt(j) + sigma * db).transpose();
  }
  return p;
}

} // namespace cfreal
