#include <gtest/gtest.h>

#include <random>

#include "cfreal/symdiff/coefficients.hpp"
#include "cfreal/symdiff/model_io.hpp"
#include "cfreal/symdiff/parser.hpp"
#include "oracles.hpp"

using namespace cfreal;

namespace {
MultiPoly P(const std::string &s, std::size_t n) { return parse_polynomial(s, n); }

AnalyticModel scalar_model(const std::string &g0, const std::string &g1, const std::string &h, Rational x0) {
  AnalyticModel a;
  a.n = 1;
  a.m = 1;
  a.x0 = {x0};
  a.fields = {{P(g0, 1)}, {P(g1, 1)}};
  a.readout = P(h, 1);
  return a;
}
} // namespace

TEST(Polynomial, Evaluate) {
  const std::vector<Rational> x{3, 5};
  EXPECT_EQ(P("x1", 2).evaluate(std::span<const Rational>(x)), 3);
  const std::vector<Rational> y{2, 3};
  EXPECT_EQ(P("x1^2*x2 - 1", 2).evaluate(std::span<const Rational>(y)), 11);
  EXPECT_EQ(MultiPoly(2).evaluate(std::span<const Rational>(y)), 0);
  const std::vector<double> yd{2.0, 3.0};
  EXPECT_DOUBLE_EQ(P("x1^2*x2 - 1", 2).evaluate(std::span<const double>(yd)), 11.0);
  EXPECT_DOUBLE_EQ(CompiledPoly(P("x1^2*x2 - 1/2*x2 + 3", 2))(yd), 12.0 - 1.5 + 3);
  const std::vector<Rational> wrong{1};
  EXPECT_THROW(P("x1", 2).evaluate(std::span<const Rational>(wrong)), MismatchError);
}

TEST(Polynomial, CanonicalTextRoundTrips) {
  const MultiPoly p = P("(x1 + 2*x2)^3 - x1*x2/3 + 0.25", 2);
  EXPECT_EQ(P(p.to_string(), 2), p);
  EXPECT_EQ(MultiPoly(3).to_string(), "0");
  EXPECT_EQ(P("x1 - x1", 1).term_count(), 0u);
}

TEST(Parser, ErrorsNameToken) {
  try {
    P("x1 + * x2", 2);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_NE(std::string(e.what()).find("'*'"), std::string::npos) << e.what();
    EXPECT_EQ(e.column(), 6);
  }
  try {
    P("x1 + x5", 2);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_NE(std::string(e.what()).find("x5"), std::string::npos) << e.what();
  }
  EXPECT_THROW(P("x1 / x2", 2), ParseError);
  EXPECT_THROW(P("x1 / 0", 2), ParseError);
  EXPECT_THROW(P("(x1", 2), ParseError);
  EXPECT_THROW(P("x1^-1", 2), ParseError);
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
}

TEST(LieDerivative, Examples) {
  EXPECT_EQ(lie_derivative({P("1", 2), P("0", 2)}, P("x1", 2)), P("1", 2));
  EXPECT_TRUE(lie_derivative({P("x2", 2), P("-x1", 2)}, P("x1^2 + x2^2", 2)).is_zero());
  EXPECT_EQ(lie_derivative({P("x1*x2", 2), P("x2", 2)}, P("x1", 2)), P("x1*x2", 2));
  EXPECT_THROW(lie_derivative({P("x1", 2)}, P("x1", 2)), MismatchError);
}

TEST(LieDerivative, LeibnizRuleOnRandomPolynomials) {
  std::mt19937_64 g(21);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + g() % 3;
    PolyVectorField f;
    for (std::size_t k = 0; k < n; ++k)
      f.push_back(oracle::random_poly(g, n, 2, 3));
    const MultiPoly phi = oracle::random_poly(g, n, 4, 3), psi = oracle::random_poly(g, n, 4, 3);
    EXPECT_EQ(lie_derivative(f, phi * psi), phi * lie_derivative(f, psi) + psi * lie_derivative(f, phi));
  }
}

TEST(Coefficients, PureDrift) {
  const Series s = cf_coefficients(scalar_model("1", "0", "x1", 0), 2);
  for (const auto &w : words_up_to(1, 2))
    EXPECT_EQ(s.coefficient(w), Scalar(w == Word{0} ? 1 : 0)) << w.to_string();
}

TEST(Coefficients, Quadratic) {
  const Series s = cf_coefficients(scalar_model("0", "1", "x1^2", 0), 2);
  for (const auto &w : words_up_to(1, 2))
    EXPECT_EQ(s.coefficient(w), Scalar(w == Word{1, 1} ? 2 : 0)) << w.to_string();
}

TEST(Coefficients, Rotation) {
  AnalyticModel a;
  a.n = 2;
  a.m = 1;
  a.x0 = {1, 0};
  a.fields = {{P("x2", 2), P("-x1", 2)}, {P("0", 2), P("0", 2)}};
  a.readout = P("x2", 2);
  const Series s = cf_coefficients(a, 3);
  EXPECT_EQ(s.coefficient(Word{}), Scalar(0));
  EXPECT_EQ(s.coefficient(Word{0}), Scalar(-1));
  a.readout = P("x1", 2);
  const Series r = cf_coefficients(a, 3);
  EXPECT_EQ(r.coefficient(Word{0}), Scalar(0));
  EXPECT_EQ(r.coefficient(Word{0, 0}), Scalar(-1));
  EXPECT_EQ(r.coefficient(Word{0, 0, 0}), Scalar(0));
  EXPECT_EQ(r.coefficient(Word{1}), Scalar(0));
}

TEST(Coefficients, DegreeZero) {
  const Series s = cf_coefficients(scalar_model("x1", "1", "x1^2 + 1", Rational(1, 2)), 0);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.coefficient(Word{}), Scalar(Rational(5, 4)));
}

TEST(Coefficients, LastLetterOutermost) {
  // g0 = (1, 0), g1 = (0, x1), h = x2: L_{g1} h = x1, L_{g0} L_{g1} h = 1,
  // while L_{g0} h = 0, so only the word (1,0) carries a degree-2 coefficient.
  AnalyticModel a;
  a.n = 2;
  a.m = 1;
  a.x0 = {0, 0};
  a.fields = {{P("1", 2), P("0", 2)}, {P("0", 2), P("x1", 2)}};
  a.readout = P("x2", 2);
  const Series s = cf_coefficients(a, 2);
  EXPECT_EQ(s.coefficient(Word{1, 0}), Scalar(1));
  EXPECT_EQ(s.coefficient(Word{0, 1}), Scalar(0));
}

TEST(Coefficients, CapOnStoredMonomials) {
  const AnalyticModel a = scalar_model("x1^2 + x1", "x1^2", "x1^3", 1);
  CoefficientOptions opts;
  opts.max_terms = 3;
  EXPECT_THROW(cf_coefficients(a, 6, opts), Error);
}

TEST(Coefficients, LinearInReadout) {
  std::mt19937_64 g(4);
  AnalyticModel a = oracle::random_analytic(g, 2, 1, 2), b = a, c = a;
  b.readout = oracle::random_poly(g, 2, 2, 3);
  c.readout = a.readout + b.readout;
  EXPECT_EQ(cf_coefficients(c, 4), cf_coefficients(a, 4) + cf_coefficients(b, 4));
}

TEST(Bilinear, ScalarCommuting) {
  BilinearModel b;
  b.n = 1;
  b.m = 1;
  b.x0 = {1};
  b.A = {linalg::RationalMatrix(1, 1), linalg::RationalMatrix(1, 1)};
  b.A[0](0, 0) = Rational(2, 3);
  b.A[1](0, 0) = -3;
  b.C = {1};
  const Series s = bilinear_coefficients(b, 5);
  for (const auto &w : words_up_to(1, 5)) {
    int zeros = 0;
    for (int l : w.letters())
      zeros += l == 0;
    Rational expect = 1;
    for (int k = 0; k < zeros; ++k)
      expect *= Rational(2, 3);
    for (std::size_t k = zeros; k < w.degree(); ++k)
      expect *= -3;
    EXPECT_EQ(s.coefficient(w), Scalar(expect));
  }
}

TEST(Bilinear, ZeroReadoutAndIdentity) {
  BilinearModel b;
  b.n = 2;
  b.m = 2;
  b.x0 = {5, 7};
  b.A.assign(3, linalg::RationalMatrix::identity(2));
  b.C = {0, 0};
  EXPECT_TRUE(bilinear_coefficients(b, 4).is_zero());
  b.C = {1, 0};
  const Series s = bilinear_coefficients(b, 4);
  for (std::size_t i = 0; i < s.size(); ++i)
    EXPECT_EQ(s.rational_at(i), 5);
}

TEST(Bilinear, MatchesProductOracleAndLinearEmbedding) {
  std::mt19937_64 g(17);
  for (int t = 0; t < 8; ++t) {
    const BilinearModel b = oracle::random_bilinear(g, 1 + g() % 3, 2);
    const Series s = bilinear_coefficients(b, 5);
    for (const auto &w : words_up_to(2, 4)) {
      std::vector<int> l(w.letters().begin(), w.letters().end());
      ASSERT_EQ(s.coefficient(w), Scalar(oracle::bilinear_coefficient(b, l)));
    }
    EXPECT_EQ(cf_coefficients(to_analytic(b), 5), s);
  }
}

TEST(Bilinear, CommutingFieldsGiveSymmetricCoefficients) {
  BilinearModel b;
  b.n = 2;
  b.m = 1;
  b.x0 = {1, 2};
  b.C = {3, -1};
  linalg::RationalMatrix a0(2, 2), a1(2, 2);
  a0(0, 0) = 1, a0(0, 1) = 2, a0(1, 1) = 1;
  a1 = linalg::RationalMatrix::identity(2); // both are I + multiple of the same nilpotent

  a1(0, 1) = 4;
  b.A = {a0, a1};
  ASSERT_EQ(a0 * a1, a1 * a0);
  const Series s = cf_coefficients(to_analytic(b), 4);
  for (const auto &w : words_up_to(1, 4)) {
    auto letters = std::vector<int>(w.letters().begin(), w.letters().end());
    std::sort(letters.begin(), letters.end());
    do
      EXPECT_EQ(s.coefficient(Word(letters)), s.coefficient(w));
    while (std::next_permutation(letters.begin(), letters.end()));
  }
}

TEST(ItoDrift, Examples) {
  const AnalyticModel constant = scalar_model("x1^2", "3", "x1", 0);
  linalg::RationalMatrix q1(1, 1);
  q1(0, 0) = 1;
  EXPECT_EQ(stratonovich_to_ito_drift(constant, q1)[0], P("x1^2", 1));
  const AnalyticModel lin = scalar_model("0", "x1", "x1", 1);
  EXPECT_EQ(stratonovich_to_ito_drift(lin, q1)[0], P("1/2*x1", 1));
  linalg::RationalMatrix q4(1, 1);
  q4(0, 0) = 4;
  EXPECT_EQ(stratonovich_to_ito_drift(lin, q4)[0], P("2*x1", 1));
  linalg::RationalMatrix bad(1, 1);
  bad(0, 0) = -1;
  EXPECT_THROW(stratonovich_to_ito_drift(lin, bad), MismatchError);
}

TEST(ItoDrift, CrossTermsUseQ) {
  // m = 2, n = 1, g1 = x1, g2 = 1: b = 1/2 (Q11 x1 + Q12 * 0 + Q21 * 1 + Q22 * 0)
  AnalyticModel a;
  a.n = 1;
  a.m = 2;
  a.x0 = {0};
  a.fields = {{P("0", 1)}, {P("x1", 1)}, {P("1", 1)}};
  a.readout = P("x1", 1);
  linalg::RationalMatrix q(2, 2);
  q(0, 0) = 2, q(0, 1) = 1, q(1, 0) = 1, q(1, 1) = 3;
  EXPECT_EQ(stratonovich_to_ito_drift(a, q)[0], P("x1 + 1/2", 1));
}

TEST(ModelIo, AnalyticRoundTrip) {
  const std::string text = "# comment\ntype = analytic\nn = 2\nm = 1\nx0 = 1/2, -1\n"
                           "g0 = x2; -x1\ng1 = 0; x1^2\nh = x1*x2 + 3\n";
  const AnalyticModel a = analytic_from_string(text);
  EXPECT_EQ(a.n, 2u);
  EXPECT_EQ(a.x0[0], Rational(1, 2));
  EXPECT_EQ(a.fields[1][1], P("x1^2", 2));
  const Model back = model_from_string(model_to_string(Model(a)));
  EXPECT_EQ(cf_coefficients(std::get<AnalyticModel>(back), 4), cf_coefficients(a, 4));
}

TEST(ModelIo, BilinearRoundTripAndInference) {
  const BilinearModel b = bilinear_from_string("n = 2\nm = 1\nx0 = 1, 0\nA0 = 0, 1; 0, 0\nA1 = 0, 0; 0, 0\nC = 1, 0\n");
  const Model back = model_from_string(model_to_string(Model(b)));
  ASSERT_TRUE(std::holds_alternative<BilinearModel>(back));
  EXPECT_EQ(bilinear_coefficients(std::get<BilinearModel>(back), 4), bilinear_coefficients(b, 4));
  EXPECT_EQ(cf_coefficients(analytic_from_string(model_to_string(Model(b))), 4), bilinear_coefficients(b, 4));
}

TEST(ModelIo, ErrorsCarryLineAndColumn) {
  try {
    model_from_string("n = 1\nm = 1\nx0 = 0\ng0 = x1 +* 2\ng1 = 1\nh = x1\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_GT(e.column(), 5);
  }
  EXPECT_THROW(model_from_string("n = 1\nm = 1\nx0 = 0\ng0 = x1\nh = x1\n"), Error);
  EXPECT_THROW(model_from_string("n = 2\nm = 1\nx0 = 0\ng0 = x1;x2\ng1 = 1;1\nh = x1\n"), Error);
}
