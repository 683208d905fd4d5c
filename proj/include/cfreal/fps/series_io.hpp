#pragma once

#include <iosfwd>
#include <string>

#include "cfreal/fps/series.hpp"

namespace cfreal {

// Text format:
//   cfseries m=<m> N=<N> mode=<rational|float>
//   <word>;<numerator>/<denominator>      one line per word, graded-lex order
// <word> is a comma-joined letter list, empty for the empty word. Float
// coefficients are written as shortest round-trip decimals.

void write_series(std::ostream &out, const Series &s);
std::string series_to_string(const Series &s);
/// Words may be omitted (coefficient zero) but must appear in graded-lex order.
Series read_series(std::istream &in);
Series series_from_string(const std::string &text);

} // namespace cfreal
