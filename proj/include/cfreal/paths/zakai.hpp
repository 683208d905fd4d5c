#pragma once

#include <vector>

#include "cfreal/symdiff/model.hpp"

namespace cfreal {

/// Unnormalized filter of a finite-state chain with generator Lambda observed
/// through dW = h(Z) dt + dV: A0 = Lambda^T - diag(h)^2 / 2, A1 = diag(h),
/// x0 = init, C = phi^T. Throws MismatchError on an invalid generator or
/// distribution.
BilinearModel zakai_build(const linalg::RationalMatrix &generator, const std::vector<Rational> &obs,
                          const std::vector<Rational> &phi, const std::vector<Rational> &init);

/// pi = sigma_phi / sigma_1 pointwise. Throws Error if sigma_1 <= 0 anywhere.
std::vector<double> normalize_filter(const std::vector<double> &sigma_phi, const std::vector<double> &sigma_one);

} // namespace cfreal
