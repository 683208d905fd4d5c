#include "cfreal/fps/series_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace cfreal {

void write_series(std::ostream &out, const Series &s) {
  out << "cfseries m=" << s.max_letter() << " N=" << s.max_degree() << " mode=" << to_string(s.mode()) << '\n';
  for (std::size_t i = 0; i < s.size(); ++i)
    out << word_at(i, s.max_letter()).to_string() << ';' << s.at(i).to_string() << '\n';
}

std::string series_to_string(const Series &s) {
  std::ostringstream os;
  write_series(os, s);
  return os.str();
}

namespace {
int parse_header_field(const std::string &line, const std::string &key, int lineno) {
  const auto pos = line.find(" " + key + "=");
  if (pos == std::string::npos)
    throw ParseError("missing header field '" + key + "'", lineno, 1);
  const std::size_t start = pos + key.size() + 2;
  int value = 0;
  auto [p, ec] = std::from_chars(line.data() + start, line.data() + line.size(), value);
  if (ec != std::errc{})
    throw ParseError("bad integer for '" + key + "'", lineno, static_cast<int>(start) + 1);
  (void)p;
  return value;
}
} // namespace

Series read_series(std::istream &in) {
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || line.rfind("cfseries", 0) != 0)
    throw ParseError("expected 'cfseries' header", 1, 1);
  const int m = parse_header_field(line, "m", lineno);
  const int n = parse_header_field(line, "N", lineno);
  const auto mpos = line.find(" mode=");
  if (mpos == std::string::npos)
    throw ParseError("missing header field 'mode'", lineno, 1);
  std::string mode_text = line.substr(mpos + 6);
  if (auto sp = mode_text.find_first_of(" \t\r"); sp != std::string::npos)
    mode_text.resize(sp);
  ScalarMode mode;
  try {
    mode = parse_scalar_mode(mode_text);
  } catch (const std::invalid_argument &e) {
    throw ParseError(e.what(), lineno, static_cast<int>(mpos) + 7);
  }
  Series s(m, n, mode);
  std::size_t last = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    const auto semi = line.find(';');
    if (semi == std::string::npos)
      throw ParseError("expected '<word>;<coefficient>'", lineno, 1);
    Word w;
    try {
      w = Word::parse(line.substr(0, semi));
    } catch (const std::invalid_argument &e) {
      throw ParseError(e.what(), lineno, 1);
    }
    if (static_cast<int>(w.degree()) > n || w.max_letter() > m)
      throw ParseError("word (" + w.to_string() + ") outside declared alphabet/degree", lineno, 1);
    const std::size_t idx = word_index(w, m);
    if (any && idx <= last)
      throw ParseError("records not in graded-lex order", lineno, 1);
    any = true;
    last = idx;
    const std::string value = line.substr(semi + 1);
    const int col = static_cast<int>(semi) + 2;
    if (mode == ScalarMode::rational) {
      Rational q;
      if (value.empty() || q.set_str(value, 10) != 0 || (value.find('/') != std::string::npos && q.get_den() == 0))
        throw ParseError("bad rational '" + value + "'", lineno, col);
      q.canonicalize();
      s.rational_ref(idx) = q;
    } else {
      double x = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
      if (ec != std::errc{} || p != value.data() + value.size())
        throw ParseError("bad float '" + value + "'", lineno, col);
      s.real_ref(idx) = x;
    }
  }
  return s;
}

Series series_from_string(const std::string &text) {
  std::istringstream is(text);
  return read_series(is);
}

} // namespace cfreal
