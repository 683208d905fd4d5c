#include "cfreal/symdiff/coefficients.hpp"

#include "cfreal/errors.hpp"

namespace cfreal {

MultiPoly lie_derivative(const PolyVectorField &g, const MultiPoly &phi) {
  if (g.size() != phi.num_vars())
    throw MismatchError("lie_derivative: field has " + std::to_string(g.size()) + " components, polynomial has " +
                        std::to_string(phi.num_vars()) + " variables");
  MultiPoly out(phi.num_vars());
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g[j].num_vars() != phi.num_vars())
      throw MismatchError("lie_derivative: field component over wrong variable count");
    if (g[j].is_zero())
      continue;
    MultiPoly d = phi.derivative(j);
    if (!d.is_zero())
      out += d * g[j];
  }
  return out;
}

Series cf_coefficients(const AnalyticModel &model, int max_degree, const CoefficientOptions &opts) {
  model.validate();
  const int m = model.m;
  Series out(m, max_degree);
  std::vector<MultiPoly> level{model.readout};
  out.rational_ref(0) = model.readout.evaluate(model.x0);
  std::size_t next_index = 1;
  for (int k = 1; k <= max_degree; ++k) {
    std::vector<MultiPoly> next;
    next.reserve(level.size() * static_cast<std::size_t>(m + 1));
    for (const auto &phi : level) {
      for (int i = 0; i <= m; ++i) {
        MultiPoly d = lie_derivative(model.fields[static_cast<std::size_t>(i)], phi);
        if (d.term_count() > opts.max_terms)
          throw Error("cf_coefficients: polynomial exceeds " + std::to_string(opts.max_terms) +
                      " stored monomials at degree " + std::to_string(k));
        out.rational_ref(next_index++) = d.evaluate(model.x0);
        next.push_back(std::move(d));
      }
    }
    level = std::move(next);
  }
  return out;
}

Series bilinear_coefficients(const BilinearModel &model, int max_degree) {
  model.validate();
  const int m = model.m;
  Series out(m, max_degree);
  if (model.n == 0)
    return out;
  std::vector<std::vector<Rational>> level{model.C};
  out.rational_ref(0) = linalg::dot(model.C, model.x0);
  std::size_t next_index = 1;
  for (int k = 1; k <= max_degree; ++k) {
    std::vector<std::vector<Rational>> next;
    next.reserve(level.size() * static_cast<std::size_t>(m + 1));
    for (const auto &row : level)
      for (int i = 0; i <= m; ++i) {
        auto r = row * model.A[static_cast<std::size_t>(i)];
        out.rational_ref(next_index++) = linalg::dot(r, model.x0);
        next.push_back(std::move(r));
      }
    level = std::move(next);
  }
  return out;
}

PolyVectorField stratonovich_to_ito_drift(const AnalyticModel &model, const linalg::RationalMatrix &Q) {
  model.validate();
  const auto m = static_cast<std::size_t>(model.m);
  if (Q.rows() != m || Q.cols() != m)
    throw MismatchError("stratonovich_to_ito_drift: Q must be m x m");
  if (!linalg::is_symmetric_positive_definite(Q))
    throw MismatchError("stratonovich_to_ito_drift: Q is not symmetric positive definite");
  PolyVectorField b = model.fields[0];
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const Rational w = Q(i - 1, j - 1) / 2;
      if (sgn(w) == 0)
        continue;
      for (std::size_t k = 0; k < model.n; ++k)
        b[k] += w * lie_derivative(model.fields[j], model.fields[i][k]);
    }
  return b;
}

} // namespace cfreal
