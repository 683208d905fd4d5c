#include "cfreal/fps/series.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <functional>
#include <stdexcept>

namespace cfreal {

// ---- Scalar ---------------------------------------------------------------

const char *to_string(ScalarMode mode) { return mode == ScalarMode::rational ? "rational" : "float"; }

ScalarMode parse_scalar_mode(const std::string &text) {
  if (text == "rational")
    return ScalarMode::rational;
  if (text == "float")
    return ScalarMode::real;
  throw std::invalid_argument("unknown scalar mode '" + text + "' (expected rational|float)");
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return std::string(buf.data(), end);
}

bool Scalar::is_zero() const {
  if (auto q = std::get_if<Rational>(&value_))
    return sgn(*q) == 0;
  return std::get<double>(value_) == 0.0;
}

const Rational &Scalar::rational() const {
  if (auto q = std::get_if<Rational>(&value_))
    return *q;
  throw MismatchError("Scalar: float value used where a rational is required");
}

double Scalar::real() const {
  if (auto x = std::get_if<double>(&value_))
    return *x;
  throw MismatchError("Scalar: rational value used where a float is required");
}

double Scalar::to_double() const {
  if (auto q = std::get_if<Rational>(&value_))
    return q->get_d();
  return std::get<double>(value_);
}

std::string Scalar::to_string() const {
  if (auto q = std::get_if<Rational>(&value_))
    return q->get_num().get_str() + "/" + q->get_den().get_str();
  return format_double(std::get<double>(value_));
}

Scalar Scalar::operator-() const {
  if (auto q = std::get_if<Rational>(&value_))
    return Scalar(Rational(-*q));
  return Scalar(-std::get<double>(value_));
}

namespace {
void check_modes(const Scalar &a, const Scalar &b) {
  if (a.mode() != b.mode())
    throw MismatchError("Scalar: mixing rational and float arithmetic");
}
} // namespace

Scalar operator+(const Scalar &a, const Scalar &b) {
  check_modes(a, b);
  if (a.mode() == ScalarMode::rational)
    return Scalar(Rational(a.rational() + b.rational()));
  return Scalar(a.real() + b.real());
}
Scalar operator-(const Scalar &a, const Scalar &b) {
  check_modes(a, b);
  if (a.mode() == ScalarMode::rational)
    return Scalar(Rational(a.rational() - b.rational()));
  return Scalar(a.real() - b.real());
}
Scalar operator*(const Scalar &a, const Scalar &b) {
  check_modes(a, b);
  if (a.mode() == ScalarMode::rational)
    return Scalar(Rational(a.rational() * b.rational()));
  return Scalar(a.real() * b.real());
}
bool operator==(const Scalar &a, const Scalar &b) {
  if (a.mode() != b.mode())
    return false;
  if (a.mode() == ScalarMode::rational)
    return a.rational() == b.rational();
  return a.real() == b.real();
}

// ---- Series ---------------------------------------------------------------

Series::Series(int max_letter, int max_degree, ScalarMode mode)
    : max_letter_(max_letter), max_degree_(max_degree), mode_(mode) {
  if (max_letter < 1)
    throw std::invalid_argument("Series: alphabet needs at least two letters (m >= 1)");
  if (max_degree < 0)
    throw std::invalid_argument("Series: negative truncation degree");
  const std::size_t n = word_count(max_letter, max_degree);
  if (mode == ScalarMode::rational)
    coeffs_ = std::vector<Rational>(n);
  else
    coeffs_ = std::vector<double>(n, 0.0);
}

Series Series::one(int max_letter, int max_degree, ScalarMode mode) {
  Series s(max_letter, max_degree, mode);
  s.set(Word{}, Scalar::one(mode));
  return s;
}

Series Series::monomial(int max_letter, int max_degree, const Word &w, ScalarMode mode) {
  Series s(max_letter, max_degree, mode);
  s.set(w, Scalar::one(mode));
  return s;
}

std::size_t Series::size() const noexcept {
  return std::visit([](const auto &v) { return v.size(); }, coeffs_);
}

void Series::check_word(const Word &w) const {
  if (static_cast<int>(w.degree()) > max_degree_)
    throw InsufficientDegree("Series: word (" + w.to_string() + ") exceeds truncation degree " +
                             std::to_string(max_degree_));
  if (w.max_letter() > max_letter_)
    throw MismatchError("Series: word (" + w.to_string() + ") uses a letter outside {0.." +
                        std::to_string(max_letter_) + "}");
}

Scalar Series::coefficient(const Word &w) const {
  check_word(w);
  return at(word_index(w, max_letter_));
}

void Series::set(const Word &w, const Scalar &value) {
  check_word(w);
  if (value.mode() != mode_)
    throw MismatchError("Series::set: scalar mode differs from series mode");
  const std::size_t i = word_index(w, max_letter_);
  if (mode_ == ScalarMode::rational)
    rational_ref(i) = value.rational();
  else
    real_ref(i) = value.real();
}

Scalar Series::at(std::size_t index) const {
  if (mode_ == ScalarMode::rational)
    return Scalar(std::get<std::vector<Rational>>(coeffs_).at(index));
  return Scalar(std::get<std::vector<double>>(coeffs_).at(index));
}

const Rational &Series::rational_at(std::size_t index) const {
  if (mode_ != ScalarMode::rational)
    throw MismatchError("Series: rational access on a float series");
  return std::get<std::vector<Rational>>(coeffs_)[index];
}

double Series::real_at(std::size_t index) const {
  if (mode_ != ScalarMode::real)
    throw MismatchError("Series: float access on a rational series");
  return std::get<std::vector<double>>(coeffs_)[index];
}

Rational &Series::rational_ref(std::size_t index) {
  if (mode_ != ScalarMode::rational)
    throw MismatchError("Series: rational access on a float series");
  return std::get<std::vector<Rational>>(coeffs_)[index];
}

double &Series::real_ref(std::size_t index) {
  if (mode_ != ScalarMode::real)
    throw MismatchError("Series: float access on a rational series");
  return std::get<std::vector<double>>(coeffs_)[index];
}

bool Series::is_zero() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (!at(i).is_zero())
      return false;
  return true;
}

std::vector<std::size_t> Series::nonzero_per_degree() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(max_degree_) + 1, 0);
  for (int d = 0; d <= max_degree_; ++d)
    for (std::size_t i = degree_offset(max_letter_, d); i < degree_offset(max_letter_, d + 1); ++i)
      if (!at(i).is_zero())
        ++counts[static_cast<std::size_t>(d)];
  return counts;
}

Series Series::truncated(int degree) const {
  Series out(max_letter_, std::min(degree, max_degree_), mode_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (mode_ == ScalarMode::rational)
      out.rational_ref(i) = rational_at(i);
    else
      out.real_ref(i) = real_at(i);
  }
  return out;
}

Series Series::to_real() const {
  Series out(max_letter_, max_degree_, ScalarMode::real);
  for (std::size_t i = 0; i < size(); ++i)
    out.real_ref(i) = at(i).to_double();
  return out;
}

bool operator==(const Series &a, const Series &b) {
  return a.max_letter_ == b.max_letter_ && a.max_degree_ == b.max_degree_ && a.mode_ == b.mode_ &&
         a.coeffs_ == b.coeffs_;
}

namespace {
void check_compatible(const Series &r, const Series &s) {
  if (r.max_letter() != s.max_letter())
    throw MismatchError("Series: alphabet mismatch");
  if (r.mode() != s.mode())
    throw MismatchError("Series: scalar mode mismatch");
}

// Calls f(i, j, k) for every split w_k = w_i w_j with |w_k| <= degree.
template <class F> void for_each_split(int m, int degree, F &&f) {
  const std::size_t base = static_cast<std::size_t>(m) + 1;
  for (int du = 0; du <= degree; ++du) {
    const std::size_t nu = degree_offset(m, du + 1) - degree_offset(m, du);
    for (int dv = 0; du + dv <= degree; ++dv) {
      const std::size_t nv = degree_offset(m, dv + 1) - degree_offset(m, dv);
      std::size_t shift = 1;
      for (int k = 0; k < dv; ++k)
        shift *= base;
      const std::size_t ou = degree_offset(m, du), ov = degree_offset(m, dv), ow = degree_offset(m, du + dv);
      for (std::size_t a = 0; a < nu; ++a)
        for (std::size_t b = 0; b < nv; ++b)
          f(ou + a, ov + b, ow + a * shift + b);
    }
  }
}
} // namespace

Series linear_combine(const Scalar &alpha, const Series &r, const Scalar &beta, const Series &s) {
  check_compatible(r, s);
  if (alpha.mode() != r.mode() || beta.mode() != r.mode())
    throw MismatchError("linear_combine: scalar mode mismatch");
  Series out(r.max_letter(), std::min(r.max_degree(), s.max_degree()), r.mode());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out.mode() == ScalarMode::rational)
      out.rational_ref(i) = alpha.rational() * r.rational_at(i) + beta.rational() * s.rational_at(i);
    else
      out.real_ref(i) = alpha.real() * r.real_at(i) + beta.real() * s.real_at(i);
  }
  return out;
}

Series operator*(const Scalar &alpha, const Series &s) {
  return linear_combine(alpha, s, Scalar::zero(s.mode()), s);
}

Series product(const Series &r, const Series &s) {
  check_compatible(r, s);
  const int degree = std::min(r.max_degree(), s.max_degree());
  Series out(r.max_letter(), degree, r.mode());
  if (out.mode() == ScalarMode::rational) {
    for_each_split(r.max_letter(), degree, [&](std::size_t i, std::size_t j, std::size_t k) {
      const Rational &a = r.rational_at(i);
      if (sgn(a) == 0)
        return;
      const Rational &b = s.rational_at(j);
      if (sgn(b) != 0)
        out.rational_ref(k) += a * b;
    });
  } else {
    for_each_split(r.max_letter(), degree, [&](std::size_t i, std::size_t j, std::size_t k) {
      out.real_ref(k) += r.real_at(i) * s.real_at(j);
    });
  }
  return out;
}

Series bracket(const Series &r, const Series &s) { return product(r, s) - product(s, r); }

namespace {
// Enumerates interleavings letter by letter; multiplicities accumulate.
void shuffle_into(const Word &u, const Word &v, std::size_t i, std::size_t j, std::vector<int> &buf,
                  const std::function<void(const std::vector<int> &)> &emit) {
  if (i == u.degree() && j == v.degree()) {
    emit(buf);
    return;
  }
  if (i < u.degree()) {
    buf.push_back(u[i]);
    shuffle_into(u, v, i + 1, j, buf, emit);
    buf.pop_back();
  }
  if (j < v.degree()) {
    buf.push_back(v[j]);
    shuffle_into(u, v, i, j + 1, buf, emit);
    buf.pop_back();
  }
}
} // namespace

Series shuffle(const Word &u, const Word &v, int max_letter) {
  if (u.max_letter() > max_letter || v.max_letter() > max_letter)
    throw MismatchError("shuffle: letter outside alphabet");
  Series out(max_letter, static_cast<int>(u.degree() + v.degree()));
  std::vector<int> buf;
  shuffle_into(u, v, 0, 0, buf, [&](const std::vector<int> &w) {
    out.rational_ref(word_index(Word(w), max_letter)) += 1;
  });
  return out;
}

Series shuffle_product(const Series &r, const Series &s) {
  check_compatible(r, s);
  const int degree = std::min(r.max_degree(), s.max_degree());
  Series out(r.max_letter(), degree, r.mode());
  const int m = r.max_letter();
  for (std::size_t i = 0; i < word_count(m, degree); ++i) {
    if (r.at(i).is_zero())
      continue;
    const Word u = word_at(i, m);
    for (std::size_t j = 0; j < word_count(m, degree - static_cast<int>(u.degree())); ++j) {
      if (s.at(j).is_zero())
        continue;
      const Word v = word_at(j, m);
      const Scalar c = r.at(i) * s.at(j);
      std::vector<int> buf;
      shuffle_into(u, v, 0, 0, buf, [&](const std::vector<int> &w) {
        const std::size_t k = word_index(Word(w), m);
        if (out.mode() == ScalarMode::rational)
          out.rational_ref(k) += c.rational();
        else
          out.real_ref(k) += c.real();
      });
    }
  }
  return out;
}

} // namespace cfreal
