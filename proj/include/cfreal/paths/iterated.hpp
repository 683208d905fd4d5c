#pragma once

#include <vector>

#include "cfreal/fps/series.hpp"
#include "cfreal/paths/sample_path.hpp"

namespace cfreal {

/// I_w(t_j) for every word of degree <= N, stored in graded-lex order.
class IteratedIntegralTable {
public:
  IteratedIntegralTable(int max_letter, int degree, std::size_t points);

  int max_letter() const noexcept { return max_letter_; }
  int degree() const noexcept { return degree_; }
  std::size_t points() const noexcept { return points_; }
  const std::vector<double> &values(const Word &w) const;
  const std::vector<double> &values_at(std::size_t word_index) const { return data_[word_index]; }
  std::vector<double> &values_at(std::size_t word_index) { return data_[word_index]; }

private:
  int max_letter_, degree_;
  std::size_t points_;
  std::vector<std::vector<double>> data_;
};

/// I_{(i1,...,ik)}(t) = int_0^t I_{(i2,...,ik)}(s) o dW_{i1}(s), dW_0 = dt,
/// by the trapezoid rule on the path grid.
IteratedIntegralTable iterated_stratonovich(const SamplePath &path, int degree);

/// sum_{|w| <= N_s} s(w) I_w(t_j). Throws MismatchError if the table is too
/// shallow or the alphabets differ.
double cf_evaluate(const Series &s, const IteratedIntegralTable &table, std::size_t j);

/// Same evaluation truncated at `degree` without copying the series.
double cf_evaluate(const Series &s, const IteratedIntegralTable &table, std::size_t j, int degree);

} // namespace cfreal
