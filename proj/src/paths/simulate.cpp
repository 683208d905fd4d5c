#include "cfreal/paths/simulate.hpp"

#include "cfreal/symdiff/coefficients.hpp"

namespace cfreal {

namespace {
void check_path(int model_m, const SamplePath &path) {
  path.validate();
  if (path.channels() != model_m)
    throw MismatchError("simulate: model has " + std::to_string(model_m) + " channels, path has " +
                        std::to_string(path.channels()));
}

void guard(const Eigen::VectorXd &x, double bound, std::size_t step) {
  if (!x.allFinite() || x.lpNorm<Eigen::Infinity>() > bound)
    throw DivergenceError("simulate: state exceeded " + format_double(bound) + " at step " + std::to_string(step));
}

struct CompiledField {
  std::vector<CompiledPoly> parts;
  void eval(std::span<const double> x, Eigen::VectorXd &out) const {
    for (std::size_t k = 0; k < parts.size(); ++k)
      out[static_cast<Eigen::Index>(k)] = parts[k](x);
  }
};

CompiledField compile(const PolyVectorField &f) {
  CompiledField c;
  for (const auto &p : f)
    c.parts.emplace_back(p);
  return c;
}
} // namespace

Trajectory simulate_analytic(const AnalyticModel &model, const SamplePath &path, const SimulationOptions &opts) {
  model.validate();
  check_path(model.m, path);
  const auto n = static_cast<Eigen::Index>(model.n);
  const std::size_t m = static_cast<std::size_t>(model.m);
  std::vector<CompiledField> fields;
  if (opts.scheme == Scheme::ito_euler) {
    const auto q = opts.q ? *opts.q : linalg::RationalMatrix::identity(m);
    fields.push_back(compile(stratonovich_to_ito_drift(model, q)));
  } else {
    fields.push_back(compile(model.fields[0]));
  }
  for (std::size_t i = 1; i <= m; ++i)
    fields.push_back(compile(model.fields[i]));
  const CompiledPoly readout(model.readout);

  Trajectory tr;
  tr.states.resize(static_cast<Eigen::Index>(path.grid.size()), n);
  tr.output.resize(path.grid.size());
  Eigen::VectorXd x(n), pred(n), g(n), f0(n), f1(n);
  for (Eigen::Index k = 0; k < n; ++k)
    x[k] = model.x0[static_cast<std::size_t>(k)].get_d();
  auto span_of = [](const Eigen::VectorXd &v) { return std::span<const double>(v.data(), static_cast<std::size_t>(v.size())); };
  // Increment map f(x) = g0(x) dt + sum_i gi(x) dWi over cell j.
  auto increment = [&](const Eigen::VectorXd &at, std::size_t j, Eigen::VectorXd &out) {
    out.setZero();
    for (std::size_t i = 0; i <= m; ++i) {
      const double dw = path.increment(j, static_cast<int>(i));
      if (dw == 0.0)
        continue;
      fields[i].eval(span_of(at), g);
      out += g * dw;
    }
  };
  tr.states.row(0) = x.transpose();
  tr.output[0] = readout(span_of(x));
  for (std::size_t j = 0; j + 1 < path.grid.size(); ++j) {
    increment(x, j, f0);
    if (opts.scheme == Scheme::heun) {
      pred = x + f0;
      increment(pred, j, f1);
      x += 0.5 * (f0 + f1);
    } else {
      x += f0;
    }
    guard(x, opts.divergence_bound, j + 1);
    tr.states.row(static_cast<Eigen::Index>(j + 1)) = x.transpose();
    tr.output[j + 1] = readout(span_of(x));
  }
  return tr;
}

Trajectory simulate_bilinear(const BilinearModel &model, const SamplePath &path, const SimulationOptions &opts) {
  model.validate();
  check_path(model.m, path);
  if (opts.scheme == Scheme::ito_euler)
    return simulate_analytic(to_analytic(model), path, opts);
  const auto n = static_cast<Eigen::Index>(model.n);
  const std::size_t m = static_cast<std::size_t>(model.m);
  std::vector<Eigen::MatrixXd> A;
  for (const auto &a : model.A) {
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        d(r, c) = a(static_cast<std::size_t>(r), static_cast<std::size_t>(c)).get_d();
    A.push_back(std::move(d));
  }
  Eigen::RowVectorXd C(n);
  Eigen::VectorXd x(n), f0(n), f1(n), pred(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    C[k] = model.C[static_cast<std::size_t>(k)].get_d();
    x[k] = model.x0[static_cast<std::size_t>(k)].get_d();
  }
  auto increment = [&](const Eigen::VectorXd &at, std::size_t j, Eigen::VectorXd &out) {
    out.setZero();
    for (std::size_t i = 0; i <= m; ++i) {
      const double dw = path.increment(j, static_cast<int>(i));
      if (dw != 0.0)
        out.noalias() += dw * (A[i] * at);
    }
  };
  Trajectory tr;
  tr.states.resize(static_cast<Eigen::Index>(path.grid.size()), n);
  tr.output.resize(path.grid.size());
  tr.states.row(0) = x.transpose();
  tr.output[0] = n == 0 ? 0.0 : C.dot(x);
  for (std::size_t j = 0; j + 1 < path.grid.size(); ++j) {
    increment(x, j, f0);
    pred = x + f0;
    increment(pred, j, f1);
    x += 0.5 * (f0 + f1);
    guard(x, opts.divergence_bound, j + 1);
    tr.states.row(static_cast<Eigen::Index>(j + 1)) = x.transpose();
    tr.output[j + 1] = n == 0 ? 0.0 : C.dot(x);
  }
  return tr;
}

} // namespace cfreal
