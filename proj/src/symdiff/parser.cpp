#include "cfreal/symdiff/parser.hpp"

#include <cctype>

#include "cfreal/errors.hpp"

namespace cfreal {

namespace {

class PolyParser {
public:
  PolyParser(const std::string &text, std::size_t n, int line, int offset)
      : s_(text), n_(n), line_(line), offset_(offset) {}

  MultiPoly parse() {
    skip();
    if (pos_ == s_.size())
      fail("empty polynomial expression");
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size())
      fail("unexpected token '" + token() + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg, line_, offset_ + static_cast<int>(pos_) + 1);
  }

  std::string token() const {
    if (pos_ >= s_.size())
      return "<end>";
    std::size_t end = pos_ + 1;
    if (std::isalnum(static_cast<unsigned char>(s_[pos_])))
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '.'))
        ++end;
    return s_.substr(pos_, end - pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly p = term();
    for (;;) {
      if (accept('+'))
        p += term();
      else if (accept('-'))
        p -= term();
      else
        return p;
    }
  }

  MultiPoly term() {
    MultiPoly p = unary();
    for (;;) {
      if (accept('*')) {
        p = p * unary();
      } else if (accept('/')) {
        skip();
        const std::size_t at = pos_;
        MultiPoly d = unary();
        if (d.total_degree() != 0 || d.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero constant, got '" + token() + "'");
        }
        p = Rational(1 / d.terms().begin()->second) * p;
      } else {
        return p;
      }
    }
  }

  MultiPoly unary() {
    if (accept('-'))
      return -unary();
    if (accept('+'))
      return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept('^')) {
      skip();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected nonnegative integer exponent, got '" + token() + "'");
      unsigned k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        k = k * 10 + static_cast<unsigned>(s_[pos_] - '0');
        if (k > 1000)
          fail("exponent too large");
        ++pos_;
      }
      return base.pow(k);
    }
    return base;
  }

  MultiPoly atom() {
    skip();
    if (pos_ >= s_.size())
      fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly p = expr();
      if (!accept(')'))
        fail("expected ')', got '" + token() + "'");
      return p;
    }
    if (c == 'x') {
      const std::size_t start = pos_;
      ++pos_;
      std::size_t idx = 0;
      bool digits = false;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        idx = idx * 10 + static_cast<std::size_t>(s_[pos_] - '0');
        digits = true;
        ++pos_;
      }
      if (!digits || idx < 1 || idx > n_) {
        pos_ = start;
        fail("unknown variable '" + token() + "' (expected x1..x" + std::to_string(n_) + ")");
      }
      return MultiPoly::variable(n_, idx - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
        pos_ = start;
        fail("malformed number '" + token() + "'");
      }
      const std::string lit = s_.substr(start, pos_ - start);
      return MultiPoly::constant(n_, parse_rational(lit, line_, offset_ + static_cast<int>(start)));
    }
    fail("unexpected token '" + token() + "'");
  }

  const std::string &s_;
  std::size_t n_;
  int line_, offset_;
  std::size_t pos_ = 0;
};

} // namespace

MultiPoly parse_polynomial(const std::string &text, std::size_t num_vars, int line, int column_offset) {
  return PolyParser(text, num_vars, line, column_offset).parse();
}

Rational parse_rational(const std::string &raw, int line, int column_offset) {
  std::size_t b = 0, e = raw.size();
  while (b < e && std::isspace(static_cast<unsigned char>(raw[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1])))
    --e;
  const std::string text = raw.substr(b, e - b);
  const int col = column_offset + static_cast<int>(b) + 1;
  auto bad = [&]() -> Rational { throw ParseError("bad rational literal '" + text + "'", line, col); };
  if (text.empty())
    return bad();
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-' || text[i] == '+') {
    neg = text[i] == '-';
    ++i;
  }
  const std::string body = text.substr(i);
  if (body.empty())
    return bad();
  Rational q;
  if (const auto slash = body.find('/'); slash != std::string::npos) {
    const std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    auto all_digits = [](const std::string &d) {
      if (d.empty())
        return false;
      for (char ch : d)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
          return false;
      return true;
    };
    if (!all_digits(num) || !all_digits(den))
      return bad();
    mpz_class n(num), d(den);
    if (d == 0)
      throw ParseError("zero denominator in '" + text + "'", line, col);
    q = Rational(n, d);
  } else if (const auto dot = body.find('.'); dot != std::string::npos) {
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    if (digits.empty() || body.find('.', dot + 1) != std::string::npos)
      return bad();
    for (char ch : digits)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        return bad();
    mpz_class den = 1;
    for (std::size_t k = dot + 1; k < body.size(); ++k)
      den *= 10;
    q = Rational(mpz_class(digits), den);
  } else {
    for (char ch : body)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        return bad();
    q = Rational(mpz_class(body));
  }
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

} // namespace cfreal
