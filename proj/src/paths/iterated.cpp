#include "cfreal/paths/iterated.hpp"

namespace cfreal {

IteratedIntegralTable::IteratedIntegralTable(int max_letter, int degree, std::size_t points)
    : max_letter_(max_letter), degree_(degree), points_(points),
      data_(word_count(max_letter, degree), std::vector<double>(points, 0.0)) {}

const std::vector<double> &IteratedIntegralTable::values(const Word &w) const {
  if (static_cast<int>(w.degree()) > degree_)
    throw InsufficientDegree("IteratedIntegralTable: word (" + w.to_string() + ") deeper than table");
  if (w.max_letter() > max_letter_)
    throw MismatchError("IteratedIntegralTable: letter outside alphabet");
  return data_[word_index(w, max_letter_)];
}

IteratedIntegralTable iterated_stratonovich(const SamplePath &path, int degree) {
  if (degree < 0)
    throw std::invalid_argument("iterated_stratonovich: negative degree");
  const int m = path.channels();
  const std::size_t points = path.grid.size();
  IteratedIntegralTable table(m, degree, points);
  std::fill(table.values_at(0).begin(), table.values_at(0).end(), 1.0);
  // Increments per letter, letter 0 being time.
  std::vector<std::vector<double>> inc(static_cast<std::size_t>(m) + 1, std::vector<double>(points - 1));
  for (std::size_t j = 0; j + 1 < points; ++j)
    for (int i = 0; i <= m; ++i)
      inc[static_cast<std::size_t>(i)][j] = path.increment(j, i);
  const std::size_t count = word_count(m, degree);
  for (std::size_t idx = 1; idx < count; ++idx) {
    const Word w = word_at(idx, m);
    const auto &inner = table.values_at(word_index(w.tail(), m));
    const auto &d = inc[static_cast<std::size_t>(w[0])];
    auto &out = table.values_at(idx);
    for (std::size_t j = 0; j + 1 < points; ++j)
      out[j + 1] = out[j] + 0.5 * (inner[j] + inner[j + 1]) * d[j];
  }
  return table;
}

double cf_evaluate(const Series &s, const IteratedIntegralTable &table, std::size_t j, int degree) {
  if (degree > s.max_degree())
    throw InsufficientDegree("cf_evaluate: truncation beyond series degree");
  if (degree > table.degree())
    throw MismatchError("cf_evaluate: iterated-integral table degree " + std::to_string(table.degree()) +
                        " below requested degree " + std::to_string(degree));
  if (s.max_letter() != table.max_letter())
    throw MismatchError("cf_evaluate: series and path alphabets differ");
  if (j >= table.points())
    throw std::out_of_range("cf_evaluate: grid index out of range");
  const std::size_t count = word_count(s.max_letter(), degree);
  double y = 0;
  if (s.mode() == ScalarMode::real) {
    for (std::size_t i = 0; i < count; ++i)
      if (s.real_at(i) != 0.0)
        y += s.real_at(i) * table.values_at(i)[j];
  } else {
    for (std::size_t i = 0; i < count; ++i)
      if (sgn(s.rational_at(i)) != 0)
        y += s.rational_at(i).get_d() * table.values_at(i)[j];
  }
  return y;
}

double cf_evaluate(const Series &s, const IteratedIntegralTable &table, std::size_t j) {
  return cf_evaluate(s, table, j, s.max_degree());
}

} // namespace cfreal
