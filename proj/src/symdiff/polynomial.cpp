#include "cfreal/symdiff/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cfreal/errors.hpp"

namespace cfreal {

MultiPoly MultiPoly::constant(std::size_t num_vars, const Rational &c) {
  MultiPoly p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars)
    throw MismatchError("MultiPoly::variable: index out of range");
  Exponents e(num_vars, 0);
  e[index] = 1;
  MultiPoly p(num_vars);
  p.add_term(e, Rational(1));
  return p;
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto &[e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

void MultiPoly::add_term(const Exponents &e, const Rational &c) {
  if (e.size() != num_vars_)
    throw MismatchError("MultiPoly: exponent length differs from variable count");
  if (sgn(c) == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0)
      terms_.erase(it);
  }
}

Rational MultiPoly::coefficient(const Exponents &e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::check(const MultiPoly &o) const {
  if (o.num_vars_ != num_vars_)
    throw MismatchError("MultiPoly: variable count mismatch (" + std::to_string(num_vars_) + " vs " +
                        std::to_string(o.num_vars_) + ")");
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= num_vars_)
    throw MismatchError("MultiPoly::derivative: variable out of range");
  MultiPoly out(num_vars_);
  for (const auto &[e, c] : terms_) {
    if (e[var] == 0)
      continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, c * e[var]);
  }
  return out;
}

Rational MultiPoly::evaluate(std::span<const Rational> x) const {
  if (x.size() != num_vars_)
    throw MismatchError("MultiPoly::evaluate: dimension mismatch");
  Rational sum = 0;
  for (const auto &[e, c] : terms_) {
    Rational t = c;
    for (std::size_t j = 0; j < num_vars_; ++j)
      for (unsigned k = 0; k < e[j]; ++k)
        t *= x[j];
    sum += t;
  }
  return sum;
}

double MultiPoly::evaluate(std::span<const double> x) const {
  if (x.size() != num_vars_)
    throw MismatchError("MultiPoly::evaluate: dimension mismatch");
  double sum = 0;
  for (const auto &[e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t j = 0; j < num_vars_; ++j)
      for (unsigned k = 0; k < e[j]; ++k)
        t *= x[j];
    sum += t;
  }
  return sum;
}

MultiPoly &MultiPoly::operator+=(const MultiPoly &o) {
  check(o);
  for (const auto &[e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

MultiPoly &MultiPoly::operator-=(const MultiPoly &o) {
  check(o);
  for (const auto &[e, c] : o.terms_)
    add_term(e, Rational(-c));
  return *this;
}

MultiPoly operator*(const MultiPoly &a, const MultiPoly &b) {
  a.check(b);
  MultiPoly out(a.num_vars_);
  Exponents e(a.num_vars_);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) {
      for (std::size_t j = 0; j < e.size(); ++j)
        e[j] = ea[j] + eb[j];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly operator*(const Rational &c, const MultiPoly &p) {
  MultiPoly out(p.num_vars_);
  for (const auto &[e, v] : p.terms_)
    out.add_term(e, c * v);
  return out;
}

MultiPoly MultiPoly::operator-() const { return Rational(-1) * *this; }

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly out = constant(num_vars_, Rational(1));
  for (unsigned i = 0; i < k; ++i)
    out = out * *this;
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty())
    return "0";
  std::string s;
  bool first = true;
  // highest total degree first, then reverse lex, for readability
  std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto &a, const auto &b) {
    const unsigned da = std::accumulate(a.first.begin(), a.first.end(), 0u);
    const unsigned db = std::accumulate(b.first.begin(), b.first.end(), 0u);
    if (da != db)
      return da > db;
    return a.first > b.first;
  });
  for (const auto &[e, c] : ordered) {
    Rational mag = abs(c);
    if (first)
      s += sgn(c) < 0 ? "-" : "";
    else
      s += sgn(c) < 0 ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0)
        continue;
      if (!mono.empty())
        mono += '*';
      mono += "x" + std::to_string(j + 1);
      if (e[j] > 1)
        mono += "^" + std::to_string(e[j]);
    }
    if (mono.empty())
      s += mag.get_str();
    else if (mag == 1)
      s += mono;
    else
      s += mag.get_str() + "*" + mono;
  }
  return s;
}

CompiledPoly::CompiledPoly(const MultiPoly &p) : num_vars_(p.num_vars()) {
  for (const auto &[e, c] : p.terms()) {
    coeffs_.push_back(c.get_d());
    exps_.insert(exps_.end(), e.begin(), e.end());
  }
}

double CompiledPoly::operator()(std::span<const double> x) const {
  double sum = 0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double v = coeffs_[t];
    const unsigned *e = exps_.data() + t * num_vars_;
    for (std::size_t j = 0; j < num_vars_; ++j)
      for (unsigned k = 0; k < e[j]; ++k)
        v *= x[j];
    sum += v;
  }
  return sum;
}

} // namespace cfreal
