#pragma once

#include "cfreal/fps/series.hpp"
#include "cfreal/symdiff/model.hpp"

namespace cfreal {

struct CoefficientOptions {
  /// Hard error once any intermediate polynomial stores more monomials than this.
  std::size_t max_terms = 1'000'000;
};

/// L_g phi = sum_j (d phi / d x_j) g_j.
MultiPoly lie_derivative(const PolyVectorField &g, const MultiPoly &phi);

/// Coefficient of (i1, ..., ik) is L_{g_ik} ... L_{g_i1} h (x0): iterated
/// Lie derivatives with the last letter applied outermost, computed by the
/// prefix recursion Phi_{w i} = L_{g_i} Phi_w.
Series cf_coefficients(const AnalyticModel &model, int max_degree, const CoefficientOptions &opts = {});

/// Coefficient of (i1, ..., ik) is C A_{i1} A_{i2} ... A_{ik} x0, the
/// coefficient series of the linear-field embedding (see to_analytic).
Series bilinear_coefficients(const BilinearModel &model, int max_degree);

/// Ito drift b = g0 + 1/2 sum_{i,j} Q_ij (Dg_i) g_j for quadratic covariation
/// rate Q (m x m, symmetric positive definite). Throws MismatchError otherwise.
PolyVectorField stratonovich_to_ito_drift(const AnalyticModel &model, const linalg::RationalMatrix &Q);

} // namespace cfreal
