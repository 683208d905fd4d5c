#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace cfreal {

/// A finite word over the letters {0, ..., m}. The empty word is the unit
/// of concatenation. Words do not carry their alphabet; containers that
/// index by word (Series, HankelBlock) validate letters against theirs.
class Word {
public:
  Word() = default;
  Word(std::initializer_list<int> letters);
  explicit Word(std::vector<int> letters);

  std::size_t degree() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  std::span<const int> letters() const noexcept { return letters_; }
  int max_letter() const noexcept;

  Word concat(const Word &other) const;
  Word append(int letter) const;
  /// Word with the first letter removed; requires a nonempty word.
  Word tail() const;
  Word reversed() const;
  /// Prefix of length k and suffix starting at k.
  Word prefix(std::size_t k) const;
  Word suffix(std::size_t k) const;

  /// Comma-joined letters, empty string for the empty word.
  std::string to_string() const;
  static Word parse(const std::string &text);

  friend bool operator==(const Word &, const Word &) = default;

private:
  std::vector<int> letters_;
};

/// Graded lexicographic order: degree first, then lexicographic.
bool graded_less(const Word &a, const Word &b);

struct GradedLess {
  bool operator()(const Word &a, const Word &b) const { return graded_less(a, b); }
};

/// Number of words of degree <= max_degree over {0..max_letter}.
std::size_t word_count(int max_letter, int max_degree);
/// Number of words of degree < degree (offset of the first degree-`degree` word).
std::size_t degree_offset(int max_letter, int degree);
/// Position of w in graded-lex order over {0..max_letter}.
std::size_t word_index(const Word &w, int max_letter);
Word word_at(std::size_t index, int max_letter);

/// All words of degree <= max_degree in graded-lex order. Throws for max_letter < 1.
std::vector<Word> words_up_to(int max_letter, int max_degree);

inline Word concat(const Word &u, const Word &v) { return u.concat(v); }

} // namespace cfreal
