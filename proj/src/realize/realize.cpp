#include "cfreal/realize/realize.hpp"

#include "cfreal/hankel/hankel.hpp"
#include "cfreal/symdiff/coefficients.hpp"

namespace cfreal {

namespace {
std::vector<Rational> hankel_row(const Series &s, const Word &u, const std::vector<Word> &cols) {
  std::vector<Rational> row(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    row[c] = s.rational_at(word_index(u.concat(cols[c]), s.max_letter()));
  return row;
}

BilinearModel empty_model(int m) {
  BilinearModel b;
  b.n = 0;
  b.m = m;
  b.A.assign(static_cast<std::size_t>(m) + 1, linalg::RationalMatrix(0, 0));
  return b;
}
} // namespace

RealizationResult bilinear_realize(const Series &s, int budget) {
  if (s.mode() != ScalarMode::rational)
    throw MismatchError("bilinear_realize: synthesis needs an exact rational series");
  if (budget > s.max_degree())
    throw InsufficientDegree("bilinear_realize: budget " + std::to_string(budget) + " exceeds series degree " +
                             std::to_string(s.max_degree()));
  const int m = s.max_letter();
  RealizationResult result;
  if (s.truncated(budget).is_zero()) {
    result.model = empty_model(m);
    result.verified_degree = budget;
    result.max_discrepancy = Scalar(Rational(0));
    return result;
  }
  if (budget < 2)
    throw RealizationError(RealizationError::Kind::not_stabilized,
                           "bilinear_realize: degree budget " + std::to_string(budget) +
                               " too small to test rank stabilization (need >= 2)");
  const int k = budget / 2;
  const auto cols = words_up_to(m, budget - k);
  result.rank_lower = rank_exact(hankel_build(s, k - 1, budget - k)).rank;
  result.rank_upper = rank_exact(hankel_build(s, k, budget - k)).rank;
  if (result.rank_lower != result.rank_upper)
    throw RealizationError(RealizationError::Kind::not_stabilized,
                           "bilinear_realize: Hankel rank not stabilized (" + std::to_string(result.rank_lower) +
                               " at row degree " + std::to_string(k - 1) + ", " +
                               std::to_string(result.rank_upper) + " at row degree " + std::to_string(k) +
                               "); insufficient data or infinite Hankel rank");

  linalg::RowSpanner span(cols.size());
  for (const auto &u : words_up_to(m, k - 1)) {
    if (span.try_add(hankel_row(s, u, cols)))
      result.basis_words.push_back(u);
    if (span.size() == result.rank_lower)
      break;
  }
  const std::size_t n = span.size();
  BilinearModel model;
  model.n = n;
  model.m = m;
  model.x0.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    model.x0[j] = s.rational_at(word_index(result.basis_words[j], m));
  auto coords_of = [&](const Word &w) {
    auto c = span.coordinates(hankel_row(s, w, cols));
    if (!c)
      throw RealizationError(RealizationError::Kind::inconsistent,
                             "bilinear_realize: row of (" + w.to_string() + ") outside the basis span");
    return *c;
  };
  model.C = coords_of(Word{});
  for (int i = 0; i <= m; ++i) {
    linalg::RationalMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = coords_of(result.basis_words[j].append(i));
      for (std::size_t l = 0; l < n; ++l)
        a(j, l) = c[l];
    }
    model.A.push_back(std::move(a));
  }
  const Discrepancy d = verify_realization(model, s, budget);
  if (!d.max_abs.is_zero())
    throw RealizationError(RealizationError::Kind::inconsistent,
                           "bilinear_realize: shift system inconsistent at word (" + d.worst_word.to_string() +
                               "); series not rational at this truncation");
  result.model = std::move(model);
  result.verified_degree = budget;
  result.max_discrepancy = d.max_abs;
  return result;
}

Discrepancy verify_realization(const BilinearModel &model, const Series &s, int degree) {
  if (degree > s.max_degree())
    throw InsufficientDegree("verify_realization: degree exceeds series truncation");
  if (model.m != s.max_letter())
    throw MismatchError("verify_realization: model and series alphabets differ");
  const Series mine = bilinear_coefficients(model, degree);
  Discrepancy d;
  d.degree = degree;
  const std::size_t count = word_count(s.max_letter(), degree);
  if (s.mode() == ScalarMode::rational) {
    Rational worst = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < count; ++i) {
      Rational diff = abs(mine.rational_at(i) - s.rational_at(i));
      if (diff > worst) {
        worst = diff;
        at = i;
      }
    }
    d.max_abs = Scalar(worst);
    d.worst_word = word_at(at, s.max_letter());
  } else {
    double worst = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const double diff = std::abs(mine.rational_at(i).get_d() - s.real_at(i));
      if (diff > worst) {
        worst = diff;
        at = i;
      }
    }
    d.max_abs = Scalar(worst);
    d.worst_word = word_at(at, s.max_letter());
  }
  return d;
}

LinearRealization linear_ho_kalman(const std::vector<std::vector<Rational>> &markov, std::size_t n_max) {
  if (markov.empty())
    throw std::invalid_argument("linear_ho_kalman: no Markov parameters");
  const std::size_t K = markov.size() - 1;
  const std::size_t m = markov.front().size();
  if (m == 0)
    throw std::invalid_argument("linear_ho_kalman: Markov parameters need at least one input channel");
  for (const auto &mk : markov)
    if (mk.size() != m)
      throw MismatchError("linear_ho_kalman: ragged Markov parameters");
  if (K < 2 * n_max)
    throw std::invalid_argument("linear_ho_kalman: need K >= 2 n_max (K = " + std::to_string(K) +
                                ", n_max = " + std::to_string(n_max) + ")");
  const std::size_t r = K / 2;
  const std::size_t blocks = K - r + 1;
  auto row = [&](std::size_t a) {
    std::vector<Rational> v;
    v.reserve(blocks * m);
    for (std::size_t b = 0; b < blocks; ++b)
      for (std::size_t i = 0; i < m; ++i)
        v.push_back(markov[a + b][i]);
    return v;
  };
  linalg::RowSpanner span(blocks * m);
  std::vector<std::size_t> basis;
  for (std::size_t a = 0; a < r; ++a)
    if (span.try_add(row(a)))
      basis.push_back(a);
  linalg::RowSpanner full = span;
  const bool extends = full.try_add(row(r));
  if (span.size() > n_max || extends)
    throw RealizationError(RealizationError::Kind::rank_exceeded,
                           "linear_ho_kalman: Hankel rank exceeds n_max = " + std::to_string(n_max));
  LinearRealization out;
  out.n = span.size();
  out.A = linalg::RationalMatrix(out.n, out.n);
  out.B = linalg::RationalMatrix(out.n, m);
  if (out.n == 0)
    return out;
  out.C = *span.coordinates(row(0));
  for (std::size_t j = 0; j < out.n; ++j) {
    const auto c = *span.coordinates(row(basis[j] + 1));
    for (std::size_t l = 0; l < out.n; ++l)
      out.A(j, l) = c[l];
    for (std::size_t i = 0; i < m; ++i)
      out.B(j, i) = markov[basis[j]][i];
  }
  for (std::size_t k = 0; k <= K; ++k)
    if (markov_parameter(out, k) != markov[k])
      throw RealizationError(RealizationError::Kind::inconsistent,
                             "linear_ho_kalman: factorization fails to reproduce Markov parameter " +
                                 std::to_string(k));
  return out;
}

std::vector<Rational> markov_parameter(const LinearRealization &r, std::size_t k) {
  const std::size_t m = r.B.cols();
  if (r.n == 0)
    return std::vector<Rational>(m);
  std::vector<Rational> y = r.C;
  for (std::size_t i = 0; i < k; ++i)
    y = y * r.A;
  return y * r.B;
}

Series linear_filter_series(const std::vector<std::vector<Rational>> &markov, int max_degree) {
  if (markov.empty() || markov.front().empty())
    throw std::invalid_argument("linear_filter_series: no Markov parameters");
  const int m = static_cast<int>(markov.front().size());
  Series s(std::max(m, 1), max_degree);
  for (int k = 0; k + 1 <= max_degree; ++k) {
    if (static_cast<std::size_t>(k) >= markov.size())
      throw InsufficientDegree("linear_filter_series: Markov parameters end before degree " +
                               std::to_string(max_degree));
    std::vector<int> letters(static_cast<std::size_t>(k), 0);
    letters.push_back(0);
    for (int i = 1; i <= m; ++i) {
      letters.back() = i;
      s.rational_ref(word_index(Word(letters), s.max_letter())) = markov[static_cast<std::size_t>(k)][static_cast<std::size_t>(i - 1)];
    }
  }
  return s;
}

BilinearModel linear_sde_as_bilinear(const LinearRealization &r) {
  const std::size_t n = r.n, m = r.B.cols();
  BilinearModel b;
  b.n = n + 1;
  b.m = static_cast<int>(m);
  b.x0.assign(n + 1, Rational(0));
  b.x0[n] = 1;
  b.C.assign(n + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    b.C[j] = r.C[j];
  linalg::RationalMatrix a0(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a0(i, j) = r.A(i, j);
  b.A.push_back(std::move(a0));
  for (std::size_t c = 0; c < m; ++c) {
    linalg::RationalMatrix ai(n + 1, n + 1);
    for (std::size_t j = 0; j < n; ++j)
      ai(j, n) = r.B(j, c);
    b.A.push_back(std::move(ai));
  }
  return b;
}

} // namespace cfreal
