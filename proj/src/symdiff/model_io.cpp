#include "cfreal/symdiff/model_io.hpp"

#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "cfreal/errors.hpp"
#include "cfreal/symdiff/parser.hpp"

namespace cfreal {

namespace {

struct Field {
  std::string value;
  int line;
  int column; // column of value[0]
};

// Splits on `sep`, reporting each piece with its starting column.
std::vector<std::pair<std::string, int>> split(const std::string &s, char sep, int column) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start), column + static_cast<int>(start));
      start = i + 1;
    }
  }
  return out;
}

bool blank(const std::string &s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c)))
      return false;
  return true;
}

std::vector<Rational> parse_list(const Field &f, std::size_t expected, const std::string &key) {
  std::vector<Rational> out;
  if (blank(f.value)) {
    if (expected != 0)
      throw ParseError("'" + key + "' is empty, expected " + std::to_string(expected) + " entries", f.line, f.column);
    return out;
  }
  for (auto &[piece, col] : split(f.value, ',', f.column))
    out.push_back(parse_rational(piece, f.line, col - 1));
  if (out.size() != expected)
    throw ParseError("'" + key + "' has " + std::to_string(out.size()) + " entries, expected " +
                         std::to_string(expected),
                     f.line, f.column);
  return out;
}

int parse_int(const Field &f, const std::string &key) {
  const Rational q = parse_rational(f.value, f.line, f.column - 1);
  if (q.get_den() != 1 || sgn(q) < 0 || !q.get_num().fits_sint_p())
    throw ParseError("'" + key + "' must be a nonnegative integer", f.line, f.column);
  return static_cast<int>(q.get_num().get_si());
}

std::map<std::string, Field> read_fields(std::istream &in) {
  std::map<std::string, Field> fields;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    if (blank(line))
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno, 1);
    std::string key = line.substr(0, eq);
    std::size_t kb = 0;
    while (kb < key.size() && std::isspace(static_cast<unsigned char>(key[kb])))
      ++kb;
    key = key.substr(kb);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
      key.pop_back();
    if (key.empty())
      throw ParseError("missing key before '='", lineno, static_cast<int>(eq) + 1);
    if (fields.count(key))
      throw ParseError("duplicate key '" + key + "'", lineno, static_cast<int>(kb) + 1);
    fields[key] = Field{line.substr(eq + 1), lineno, static_cast<int>(eq) + 2};
  }
  return fields;
}

const Field &require(const std::map<std::string, Field> &f, const std::string &key) {
  auto it = f.find(key);
  if (it == f.end())
    throw ParseError("missing field '" + key + "'", 0, 0);
  return it->second;
}

AnalyticModel build_analytic(const std::map<std::string, Field> &f) {
  AnalyticModel model;
  model.n = static_cast<std::size_t>(parse_int(require(f, "n"), "n"));
  model.m = parse_int(require(f, "m"), "m");
  if (model.m < 1)
    throw ParseError("'m' must be >= 1", require(f, "m").line, require(f, "m").column);
  model.x0 = parse_list(require(f, "x0"), model.n, "x0");
  for (int i = 0; i <= model.m; ++i) {
    const std::string key = "g" + std::to_string(i);
    const Field &g = require(f, key);
    PolyVectorField field;
    if (!blank(g.value) || model.n != 0)
      for (auto &[piece, col] : split(g.value, ';', g.column))
        field.push_back(parse_polynomial(piece, model.n, g.line, col - 1));
    if (field.size() != model.n)
      throw ParseError("'" + key + "' has " + std::to_string(field.size()) + " components, expected " +
                           std::to_string(model.n),
                       g.line, g.column);
    model.fields.push_back(std::move(field));
  }
  const Field &h = require(f, "h");
  model.readout = parse_polynomial(h.value, model.n, h.line, h.column - 1);
  model.validate();
  return model;
}

BilinearModel build_bilinear(const std::map<std::string, Field> &f) {
  BilinearModel model;
  model.n = static_cast<std::size_t>(parse_int(require(f, "n"), "n"));
  model.m = parse_int(require(f, "m"), "m");
  if (model.m < 1)
    throw ParseError("'m' must be >= 1", require(f, "m").line, require(f, "m").column);
  model.x0 = parse_list(require(f, "x0"), model.n, "x0");
  model.C = parse_list(require(f, "C"), model.n, "C");
  for (int i = 0; i <= model.m; ++i) {
    const std::string key = "A" + std::to_string(i);
    const Field &a = require(f, key);
    linalg::RationalMatrix mat(model.n, model.n);
    if (model.n > 0) {
      auto rows = split(a.value, ';', a.column);
      if (rows.size() != model.n)
        throw ParseError("'" + key + "' has " + std::to_string(rows.size()) + " rows, expected " +
                             std::to_string(model.n),
                         a.line, a.column);
      for (std::size_t r = 0; r < model.n; ++r) {
        auto entries = parse_list(Field{rows[r].first, a.line, rows[r].second}, model.n, key);
        for (std::size_t c = 0; c < model.n; ++c)
          mat(r, c) = entries[c];
      }
    } else if (!blank(a.value)) {
      throw ParseError("'" + key + "' must be empty for n = 0", a.line, a.column);
    }
    model.A.push_back(std::move(mat));
  }
  model.validate();
  return model;
}

std::string join(const std::vector<Rational> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ", ";
    s += v[i].get_str();
  }
  return s;
}

} // namespace

Model read_model(std::istream &in) {
  const auto fields = read_fields(in);
  std::string type;
  if (auto it = fields.find("type"); it != fields.end()) {
    std::istringstream is(it->second.value);
    is >> type;
    if (type != "analytic" && type != "bilinear")
      throw ParseError("unknown model type '" + type + "'", it->second.line, it->second.column);
  } else {
    type = fields.count("A0") ? "bilinear" : "analytic";
  }
  if (type == "bilinear")
    return build_bilinear(fields);
  return build_analytic(fields);
}

Model model_from_string(const std::string &text) {
  std::istringstream is(text);
  return read_model(is);
}

AnalyticModel analytic_from_string(const std::string &text) {
  auto m = model_from_string(text);
  if (auto *a = std::get_if<AnalyticModel>(&m))
    return *a;
  return to_analytic(std::get<BilinearModel>(m));
}

BilinearModel bilinear_from_string(const std::string &text) {
  auto m = model_from_string(text);
  if (auto *b = std::get_if<BilinearModel>(&m))
    return *b;
  throw MismatchError("expected a bilinear model");
}

void write_model(std::ostream &out, const AnalyticModel &m) {
  out << "type = analytic\n";
  out << "n = " << m.n << "\nm = " << m.m << "\n";
  out << "x0 = " << join(m.x0) << "\n";
  for (std::size_t i = 0; i < m.fields.size(); ++i) {
    out << "g" << i << " =";
    for (std::size_t j = 0; j < m.fields[i].size(); ++j)
      out << (j ? "; " : " ") << m.fields[i][j].to_string();
    out << "\n";
  }
  out << "h = " << m.readout.to_string() << "\n";
}

void write_model(std::ostream &out, const BilinearModel &m) {
  out << "type = bilinear\n";
  out << "n = " << m.n << "\nm = " << m.m << "\n";
  out << "x0 = " << join(m.x0) << "\n";
  for (std::size_t i = 0; i < m.A.size(); ++i) {
    out << "A" << i << " =";
    for (std::size_t r = 0; r < m.n; ++r)
      out << (r ? "; " : " ") << join(m.A[i].row(r));
    out << "\n";
  }
  out << "C = " << join(m.C) << "\n";
}

std::string model_to_string(const Model &m) {
  std::ostringstream os;
  std::visit([&](const auto &x) { write_model(os, x); }, m);
  return os.str();
}

} // namespace cfreal
