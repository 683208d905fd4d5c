#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cfreal/fps/series.hpp"

namespace cfreal {

/// True iff w is strictly smaller than every proper rotation (single letters qualify).
bool is_lyndon(const Word &w);

/// All Lyndon words of degree 1..max_degree over {0..max_letter}, graded-lex.
std::vector<Word> lyndon_words(int max_letter, int max_degree);

/// Number of Lyndon words of the given degree over an alphabet of this size (Witt's formula).
long long witt_count(int alphabet_size, int degree);

/// Binary bracket tree: a leaf letter or [left, right]. Immutable, shares subtrees.
class BracketTree {
public:
  static BracketTree leaf(int letter);
  static BracketTree bracket(BracketTree left, BracketTree right);

  bool is_leaf() const noexcept { return !node_->left; }
  int letter() const;
  const BracketTree &left() const;
  const BracketTree &right() const;

  std::size_t degree() const noexcept { return node_->degree; }
  /// Left-to-right leaf word.
  Word foliage() const;
  /// Nested text form, e.g. "[0,[0,1]]"; a leaf prints as its letter.
  std::string to_string() const;

  friend bool operator==(const BracketTree &a, const BracketTree &b);

private:
  struct Node {
    int letter = -1;
    std::shared_ptr<const BracketTree> left, right;
    std::size_t degree = 1;
  };
  explicit BracketTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Right-standard factorization: w = u v with v the longest proper Lyndon
/// suffix, bracketed recursively. Throws std::invalid_argument for non-Lyndon w.
BracketTree standard_bracketing(const Word &w);

/// Fully expanded Lie monomial as a rational series over {0..max_letter}
/// truncated at max_degree (which must be >= the tree degree).
Series expand_bracket(const BracketTree &t, int max_letter, int max_degree);

} // namespace cfreal
