#include "cfreal/fps/word.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace cfreal {

Word::Word(std::initializer_list<int> letters) : letters_(letters) {
  for (int l : letters_)
    if (l < 0)
      throw std::invalid_argument("Word: negative letter");
}

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
  for (int l : letters_)
    if (l < 0)
      throw std::invalid_argument("Word: negative letter");
}

int Word::max_letter() const noexcept {
  return letters_.empty() ? -1 : *std::max_element(letters_.begin(), letters_.end());
}

Word Word::concat(const Word &other) const {
  std::vector<int> out;
  out.reserve(letters_.size() + other.letters_.size());
  out.insert(out.end(), letters_.begin(), letters_.end());
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word Word::append(int letter) const {
  Word w = *this;
  w.letters_.push_back(letter);
  return w;
}

Word Word::tail() const {
  if (letters_.empty())
    throw std::logic_error("Word::tail of empty word");
  return suffix(1);
}

Word Word::reversed() const {
  Word w = *this;
  std::reverse(w.letters_.begin(), w.letters_.end());
  return w;
}

Word Word::prefix(std::size_t k) const {
  Word w;
  w.letters_.assign(letters_.begin(), letters_.begin() + std::min(k, letters_.size()));
  return w;
}

Word Word::suffix(std::size_t k) const {
  Word w;
  if (k < letters_.size())
    w.letters_.assign(letters_.begin() + k, letters_.end());
  return w;
}

std::string Word::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(letters_[i]);
  }
  return s;
}

Word Word::parse(const std::string &text) {
  std::vector<int> letters;
  if (text.empty())
    return Word{};
  const char *p = text.data();
  const char *end = p + text.size();
  while (p < end) {
    int v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || v < 0)
      throw std::invalid_argument("Word::parse: bad letter in '" + text + "'");
    letters.push_back(v);
    p = next;
    if (p < end) {
      if (*p != ',' || p + 1 == end)
        throw std::invalid_argument("Word::parse: expected ',' in '" + text + "'");
      ++p;
    }
  }
  return Word(std::move(letters));
}

bool graded_less(const Word &a, const Word &b) {
  if (a.degree() != b.degree())
    return a.degree() < b.degree();
  auto la = a.letters(), lb = b.letters();
  return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end());
}

std::size_t degree_offset(int max_letter, int degree) {
  const std::size_t base = static_cast<std::size_t>(max_letter) + 1;
  std::size_t total = 0, power = 1;
  for (int k = 0; k < degree; ++k) {
    total += power;
    power *= base;
  }
  return total;
}

std::size_t word_count(int max_letter, int max_degree) {
  return degree_offset(max_letter, max_degree + 1);
}

std::size_t word_index(const Word &w, int max_letter) {
  const std::size_t base = static_cast<std::size_t>(max_letter) + 1;
  std::size_t value = 0;
  for (int l : w.letters()) {
    if (l > max_letter)
      throw std::out_of_range("word_index: letter outside alphabet");
    value = value * base + static_cast<std::size_t>(l);
  }
  return degree_offset(max_letter, static_cast<int>(w.degree())) + value;
}

Word word_at(std::size_t index, int max_letter) {
  const std::size_t base = static_cast<std::size_t>(max_letter) + 1;
  int degree = 0;
  std::size_t power = 1;
  while (index >= power) {
    index -= power;
    power *= base;
    ++degree;
  }
  std::vector<int> letters(static_cast<std::size_t>(degree));
  for (int k = degree - 1; k >= 0; --k) {
    letters[static_cast<std::size_t>(k)] = static_cast<int>(index % base);
    index /= base;
  }
  return Word(std::move(letters));
}

std::vector<Word> words_up_to(int max_letter, int max_degree) {
  if (max_letter < 1)
    throw std::invalid_argument("words_up_to: alphabet needs at least two letters (m >= 1)");
  if (max_degree < 0)
    throw std::invalid_argument("words_up_to: negative degree bound");
  const std::size_t n = word_count(max_letter, max_degree);
  std::vector<Word> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(word_at(i, max_letter));
  return out;
}

} // namespace cfreal
