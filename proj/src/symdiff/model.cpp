#include "cfreal/symdiff/model.hpp"

#include "cfreal/errors.hpp"

namespace cfreal {

void AnalyticModel::validate() const {
  if (m < 1)
    throw MismatchError("AnalyticModel: need m >= 1 driving channels");
  if (x0.size() != n)
    throw MismatchError("AnalyticModel: x0 has " + std::to_string(x0.size()) + " entries, expected " +
                        std::to_string(n));
  if (fields.size() != static_cast<std::size_t>(m) + 1)
    throw MismatchError("AnalyticModel: expected " + std::to_string(m + 1) + " vector fields g0..gm");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].size() != n)
      throw MismatchError("AnalyticModel: g" + std::to_string(i) + " has wrong number of components");
    for (const auto &c : fields[i])
      if (c.num_vars() != n)
        throw MismatchError("AnalyticModel: g" + std::to_string(i) + " component over wrong variable count");
  }
  if (readout.num_vars() != n)
    throw MismatchError("AnalyticModel: readout over wrong variable count");
}

void BilinearModel::validate() const {
  if (m < 1)
    throw MismatchError("BilinearModel: need m >= 1 driving channels");
  if (x0.size() != n || C.size() != n)
    throw MismatchError("BilinearModel: x0/C length differs from n = " + std::to_string(n));
  if (A.size() != static_cast<std::size_t>(m) + 1)
    throw MismatchError("BilinearModel: expected " + std::to_string(m + 1) + " matrices A0..Am");
  for (std::size_t i = 0; i < A.size(); ++i)
    if (A[i].rows() != n || A[i].cols() != n)
      throw MismatchError("BilinearModel: A" + std::to_string(i) + " is not n x n");
}

AnalyticModel to_analytic(const BilinearModel &b) {
  b.validate();
  AnalyticModel a;
  a.n = b.n;
  a.m = b.m;
  a.x0 = b.x0;
  a.readout = MultiPoly(b.n);
  for (std::size_t j = 0; j < b.n; ++j)
    a.readout += b.C[j] * MultiPoly::variable(b.n, j);
  for (const auto &Ai : b.A) {
    PolyVectorField g(b.n, MultiPoly(b.n));
    for (std::size_t r = 0; r < b.n; ++r)
      for (std::size_t c = 0; c < b.n; ++c)
        g[r] += Ai(r, c) * MultiPoly::variable(b.n, c);
    a.fields.push_back(std::move(g));
  }
  return a;
}

} // namespace cfreal
