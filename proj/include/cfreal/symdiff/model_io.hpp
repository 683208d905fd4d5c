#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "cfreal/symdiff/model.hpp"

namespace cfreal {

// Model file: one `key = value` per line, '#' starts a comment.
//   type = analytic | bilinear        (optional; inferred from A0 when absent)
//   n = <int>, m = <int>
//   x0 = <rational>, <rational>, ...
// analytic:  g0 .. gm = <poly>; <poly>; ...  (n components)   h = <poly>
// bilinear:  A0 .. Am = <row>; <row>; ...    (row = comma-separated rationals)
//            C = <rational>, ...
// Polynomials are in x1..xn with + - * ^ / and parentheses.

using Model = std::variant<AnalyticModel, BilinearModel>;

Model read_model(std::istream &in);
Model model_from_string(const std::string &text);
AnalyticModel analytic_from_string(const std::string &text);
BilinearModel bilinear_from_string(const std::string &text);

void write_model(std::ostream &out, const AnalyticModel &m);
void write_model(std::ostream &out, const BilinearModel &m);
std::string model_to_string(const Model &m);

} // namespace cfreal
