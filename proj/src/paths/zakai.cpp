#include "cfreal/paths/zakai.hpp"

namespace cfreal {

BilinearModel zakai_build(const linalg::RationalMatrix &generator, const std::vector<Rational> &obs,
                          const std::vector<Rational> &phi, const std::vector<Rational> &init) {
  const std::size_t d = generator.rows();
  if (d == 0 || generator.cols() != d)
    throw MismatchError("zakai_build: generator must be square and nonempty");
  if (obs.size() != d || phi.size() != d || init.size() != d)
    throw MismatchError("zakai_build: observation, test function and initial law need " + std::to_string(d) +
                        " entries");
  for (std::size_t r = 0; r < d; ++r) {
    Rational sum = 0;
    for (std::size_t c = 0; c < d; ++c) {
      if (r != c && generator(r, c) < 0)
        throw MismatchError("zakai_build: negative off-diagonal rate at (" + std::to_string(r + 1) + "," +
                            std::to_string(c + 1) + ")");
      sum += generator(r, c);
    }
    if (sum != 0)
      throw MismatchError("zakai_build: generator row " + std::to_string(r + 1) + " does not sum to zero");
  }
  Rational total = 0;
  for (const auto &p : init) {
    if (p < 0)
      throw MismatchError("zakai_build: initial distribution has a negative entry");
    total += p;
  }
  if (total != 1)
    throw MismatchError("zakai_build: initial distribution does not sum to one");

  BilinearModel b;
  b.n = d;
  b.m = 1;
  b.x0 = init;
  b.C = phi;
  linalg::RationalMatrix a0(d, d), a1(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      a0(r, c) = generator(c, r);
  for (std::size_t k = 0; k < d; ++k) {
    a0(k, k) -= obs[k] * obs[k] / 2;
    a1(k, k) = obs[k];
  }
  b.A = {std::move(a0), std::move(a1)};
  return b;
}

std::vector<double> normalize_filter(const std::vector<double> &sigma_phi, const std::vector<double> &sigma_one) {
  if (sigma_phi.size() != sigma_one.size())
    throw MismatchError("normalize_filter: trajectories differ in length");
  std::vector<double> pi(sigma_phi.size());
  for (std::size_t j = 0; j < pi.size(); ++j) {
    if (!(sigma_one[j] > 0))
      throw Error("normalize_filter: sigma_t(1) = " + format_double(sigma_one[j]) + " at step " +
                  std::to_string(j) + " is not positive (discretization failure)");
    pi[j] = sigma_phi[j] / sigma_one[j];
  }
  return pi;
}

} // namespace cfreal
