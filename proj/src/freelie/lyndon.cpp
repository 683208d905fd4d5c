#include "cfreal/freelie/lyndon.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfreal {

bool is_lyndon(const Word &w) {
  const std::size_t n = w.degree();
  if (n == 0)
    return false;
  auto l = w.letters();
  for (std::size_t r = 1; r < n; ++r) {
    // compare w with its rotation starting at r
    int cmp = 0;
    for (std::size_t k = 0; k < n && cmp == 0; ++k) {
      const int a = l[k], b = l[(r + k) % n];
      cmp = (a < b) ? -1 : (a > b ? 1 : 0);
    }
    if (cmp >= 0)
      return false;
  }
  return true;
}

std::vector<Word> lyndon_words(int max_letter, int max_degree) {
  if (max_letter < 1)
    throw std::invalid_argument("lyndon_words: alphabet needs at least two letters (m >= 1)");
  std::vector<Word> out;
  if (max_degree < 1)
    return out;
  // Duval's generation: successive Lyndon words of length <= max_degree in lex order.
  std::vector<int> w{0};
  const auto n = static_cast<std::size_t>(max_degree);
  while (!w.empty()) {
    out.emplace_back(w);
    const std::size_t len = w.size();
    while (w.size() < n)
      w.push_back(w[w.size() - len]);
    while (!w.empty() && w.back() == max_letter)
      w.pop_back();
    if (!w.empty())
      ++w.back();
  }
  std::stable_sort(out.begin(), out.end(), graded_less);
  return out;
}

long long witt_count(int alphabet_size, int degree) {
  auto mobius = [](int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0)
          return 0;
        result = -result;
      }
    }
    if (n > 1)
      result = -result;
    return result;
  };
  long long sum = 0;
  for (int d = 1; d <= degree; ++d) {
    if (degree % d)
      continue;
    long long power = 1;
    for (int k = 0; k < degree / d; ++k)
      power *= alphabet_size;
    sum += mobius(d) * power;
  }
  return sum / degree;
}

BracketTree BracketTree::leaf(int letter) {
  if (letter < 0)
    throw std::invalid_argument("BracketTree: negative letter");
  auto n = std::make_shared<Node>();
  n->letter = letter;
  return BracketTree(std::move(n));
}

BracketTree BracketTree::bracket(BracketTree left, BracketTree right) {
  auto n = std::make_shared<Node>();
  n->degree = left.degree() + right.degree();
  n->left = std::make_shared<const BracketTree>(std::move(left));
  n->right = std::make_shared<const BracketTree>(std::move(right));
  return BracketTree(std::move(n));
}

int BracketTree::letter() const {
  if (!is_leaf())
    throw std::logic_error("BracketTree::letter on a bracket");
  return node_->letter;
}

const BracketTree &BracketTree::left() const {
  if (is_leaf())
    throw std::logic_error("BracketTree::left on a leaf");
  return *node_->left;
}

const BracketTree &BracketTree::right() const {
  if (is_leaf())
    throw std::logic_error("BracketTree::right on a leaf");
  return *node_->right;
}

Word BracketTree::foliage() const {
  if (is_leaf())
    return Word{letter()};
  return left().foliage().concat(right().foliage());
}

std::string BracketTree::to_string() const {
  if (is_leaf())
    return std::to_string(letter());
  return "[" + left().to_string() + "," + right().to_string() + "]";
}

bool operator==(const BracketTree &a, const BracketTree &b) {
  if (a.is_leaf() != b.is_leaf())
    return false;
  if (a.is_leaf())
    return a.letter() == b.letter();
  return a.left() == b.left() && a.right() == b.right();
}

BracketTree standard_bracketing(const Word &w) {
  if (!is_lyndon(w))
    throw std::invalid_argument("standard_bracketing: (" + w.to_string() + ") is not a Lyndon word");
  if (w.degree() == 1)
    return BracketTree::leaf(w[0]);
  for (std::size_t k = 1; k < w.degree(); ++k) {
    Word v = w.suffix(k);
    if (is_lyndon(v))
      return BracketTree::bracket(standard_bracketing(w.prefix(k)), standard_bracketing(v));
  }
  throw std::logic_error("standard_bracketing: no Lyndon suffix"); // unreachable: last letter is Lyndon
}

Series expand_bracket(const BracketTree &t, int max_letter, int max_degree) {
  if (static_cast<int>(t.degree()) > max_degree)
    throw InsufficientDegree("expand_bracket: tree degree exceeds truncation");
  if (t.is_leaf())
    return Series::monomial(max_letter, max_degree, Word{t.letter()});
  return bracket(expand_bracket(t.left(), max_letter, max_degree), expand_bracket(t.right(), max_letter, max_degree));
}

} // namespace cfreal
