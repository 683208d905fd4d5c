#include "cfreal/hankel/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cfreal/freelie/lyndon.hpp"

namespace cfreal {

std::size_t HankelBlock::rows() const noexcept { return row_words_.size(); }
std::size_t HankelBlock::cols() const noexcept { return col_words_.size(); }

Scalar HankelBlock::entry(std::size_t r, std::size_t c) const {
  if (mode_ == ScalarMode::rational)
    return Scalar(rational()(r, c));
  return Scalar(real()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
}

const linalg::RationalMatrix &HankelBlock::rational() const {
  if (auto p = std::get_if<linalg::RationalMatrix>(&entries_))
    return *p;
  throw MismatchError("HankelBlock: rational access on a float block");
}

const Eigen::MatrixXd &HankelBlock::real() const {
  if (auto p = std::get_if<Eigen::MatrixXd>(&entries_))
    return *p;
  throw MismatchError("HankelBlock: float access on a rational block");
}

HankelBlock HankelBlock::to_real() const {
  if (mode_ == ScalarMode::real)
    return *this;
  HankelBlock out = *this;
  out.mode_ = ScalarMode::real;
  const auto &q = rational();
  Eigen::MatrixXd d(static_cast<Eigen::Index>(q.rows()), static_cast<Eigen::Index>(q.cols()));
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c)
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = q(r, c).get_d();
  out.entries_ = std::move(d);
  return out;
}

HankelBlock hankel_build(const Series &s, int row_degree, int col_degree) {
  if (row_degree < 0 || col_degree < 0)
    throw std::invalid_argument("hankel_build: negative truncation");
  if (row_degree + col_degree > s.max_degree())
    throw InsufficientDegree("hankel_build: rows " + std::to_string(row_degree) + " + cols " +
                             std::to_string(col_degree) + " exceed series degree " +
                             std::to_string(s.max_degree()));
  const int m = s.max_letter();
  HankelBlock h;
  h.max_letter_ = m;
  h.row_degree_ = row_degree;
  h.col_degree_ = col_degree;
  h.mode_ = s.mode();
  h.row_words_ = words_up_to(m, row_degree);
  h.col_words_ = words_up_to(m, col_degree);
  const std::size_t R = h.row_words_.size(), C = h.col_words_.size();
  auto product_index = [&](const Word &u, const Word &v) { return word_index(u.concat(v), m); };
  if (s.mode() == ScalarMode::rational) {
    linalg::RationalMatrix q(R, C);
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t c = 0; c < C; ++c)
        q(r, c) = s.rational_at(product_index(h.row_words_[r], h.col_words_[c]));
    h.entries_ = std::move(q);
  } else {
    Eigen::MatrixXd d(static_cast<Eigen::Index>(R), static_cast<Eigen::Index>(C));
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t c = 0; c < C; ++c)
        d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            s.real_at(product_index(h.row_words_[r], h.col_words_[c]));
    h.entries_ = std::move(d);
  }
  return h;
}

RankReport rank_exact(const HankelBlock &h) {
  if (h.mode() != ScalarMode::rational)
    throw MismatchError("rank_exact: needs a rational Hankel block");
  RankReport rep;
  rep.kind = "hankel";
  rep.mode = RankMode::exact;
  rep.rank = linalg::rank_fraction_free(h.rational());
  rep.row_degree = h.row_degree();
  rep.col_degree = h.col_degree();
  return rep;
}

namespace {
std::vector<double> singular_values(const Eigen::MatrixXd &a) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const auto &sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

std::size_t count_above(const std::vector<double> &sv, double tol) {
  if (sv.empty() || sv.front() == 0.0)
    return 0;
  const double cut = tol * sv.front();
  return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [&](double x) { return x > cut; }));
}

void check_tol(double tol) {
  if (!(tol > 0.0 && tol < 1.0))
    throw std::invalid_argument("numeric rank tolerance must lie in (0, 1)");
}
} // namespace

RankReport rank_numeric(const HankelBlock &h, double tol, double radius) {
  if (h.mode() != ScalarMode::real)
    throw MismatchError("rank_numeric: needs a float Hankel block");
  check_tol(tol);
  if (!(radius > 0.0))
    throw std::invalid_argument("rank_numeric: radius must be positive");
  if (h.rows() == 0 || h.cols() == 0)
    throw std::invalid_argument("rank_numeric: empty matrix");
  auto weight = [&](const Word &w) {
    const double k = static_cast<double>(w.degree());
    return 1.0 / (std::tgamma(k + 1.0) * std::pow(radius, k));
  };
  Eigen::MatrixXd a = h.real();
  for (std::size_t r = 0; r < h.rows(); ++r)
    a.row(static_cast<Eigen::Index>(r)) *= weight(h.row_words()[r]);
  for (std::size_t c = 0; c < h.cols(); ++c)
    a.col(static_cast<Eigen::Index>(c)) *= weight(h.col_words()[c]);
  RankReport rep;
  rep.kind = "hankel";
  rep.mode = RankMode::numeric;
  rep.tolerance = tol;
  rep.singular_values = singular_values(a);
  rep.rank = count_above(rep.singular_values, tol);
  rep.row_degree = h.row_degree();
  rep.col_degree = h.col_degree();
  return rep;
}

namespace {
int polynomial_degree(const Series &p) {
  int deg = -1;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!p.at(i).is_zero())
      deg = static_cast<int>(word_at(i, p.max_letter()).degree());
  return deg;
}
} // namespace

std::vector<Scalar> f_y_apply(const Series &s, const Series &p, int obs_degree) {
  if (s.max_letter() != p.max_letter())
    throw MismatchError("f_y_apply: alphabet mismatch");
  if (s.mode() != p.mode())
    throw MismatchError("f_y_apply: scalar mode mismatch");
  const int m = s.max_letter();
  const int deg = std::max(polynomial_degree(p), 0);
  if (deg + obs_degree > s.max_degree())
    throw InsufficientDegree("f_y_apply: polynomial degree " + std::to_string(deg) + " + observation degree " +
                             std::to_string(obs_degree) + " exceed series degree " +
                             std::to_string(s.max_degree()));
  const auto obs = words_up_to(m, obs_degree);
  std::vector<Scalar> out(obs.size(), Scalar::zero(s.mode()));
  for (std::size_t i = 0; i < word_count(m, deg); ++i) {
    const Scalar c = p.at(i);
    if (c.is_zero())
      continue;
    const Word w = word_at(i, m);
    for (std::size_t k = 0; k < obs.size(); ++k)
      out[k] = out[k] + c * s.at(word_index(obs[k].concat(w), m));
  }
  return out;
}

RankReport lie_rank(const Series &s, int bracket_degree, int obs_degree, double tol) {
  if (bracket_degree + obs_degree > s.max_degree())
    throw InsufficientDegree("lie_rank: bracket degree " + std::to_string(bracket_degree) + " + observation degree " +
                             std::to_string(obs_degree) + " exceed series degree " +
                             std::to_string(s.max_degree()));
  const int m = s.max_letter();
  const auto lyndon = lyndon_words(m, bracket_degree);
  RankReport rep;
  rep.kind = "lie";
  rep.bracket_degree = bracket_degree;
  rep.obs_degree = obs_degree;
  std::vector<std::vector<Scalar>> vectors;
  for (const auto &l : lyndon) {
    Series p = expand_bracket(standard_bracketing(l), m, bracket_degree);
    if (s.mode() == ScalarMode::real)
      p = p.to_real();
    vectors.push_back(f_y_apply(s, p, obs_degree));
  }
  const std::size_t width = word_count(m, obs_degree);
  if (s.mode() == ScalarMode::rational) {
    linalg::RationalMatrix a(vectors.size(), width);
    for (std::size_t r = 0; r < vectors.size(); ++r)
      for (std::size_t c = 0; c < width; ++c)
        a(r, c) = vectors[r][c].rational();
    rep.mode = RankMode::exact;
    rep.rank = linalg::rank_fraction_free(a);
  } else {
    check_tol(tol);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < vectors.size(); ++r)
      for (std::size_t c = 0; c < width; ++c)
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = vectors[r][c].real();
    rep.mode = RankMode::numeric;
    rep.tolerance = tol;
    rep.singular_values = a.size() ? singular_values(a) : std::vector<double>{};
    rep.rank = count_above(rep.singular_values, tol);
  }
  return rep;
}

std::string hankel_to_csv(const HankelBlock &h) {
  std::ostringstream os;
  auto label = [](const Word &w) { return "\"" + w.to_string() + "\""; };
  os << "word";
  for (const auto &c : h.col_words())
    os << ',' << label(c);
  os << '\n';
  for (std::size_t r = 0; r < h.rows(); ++r) {
    os << label(h.row_words()[r]);
    for (std::size_t c = 0; c < h.cols(); ++c)
      os << ',' << h.entry(r, c).to_string();
    os << '\n';
  }
  return os.str();
}

} // namespace cfreal
