#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cfreal/hankel/hankel.hpp"
#include "cfreal/paths/iterated.hpp"
#include "cfreal/paths/simulate.hpp"
#include "cfreal/paths/zakai.hpp"
#include "cfreal/symdiff/coefficients.hpp"
#include "cfreal/symdiff/parser.hpp"
#include "oracles.hpp"

using namespace cfreal;

namespace {
MultiPoly P(const std::string &s, std::size_t n = 1) { return parse_polynomial(s, n); }

AnalyticModel scalar_model(const std::string &g0, const std::string &g1, const std::string &h, Rational x0) {
  AnalyticModel a;
  a.n = 1;
  a.m = 1;
  a.x0 = {x0};
  a.fields = {{P(g0)}, {P(g1)}};
  a.readout = P(h);
  return a;
}

SamplePath smooth_path(std::size_t J, double T) {
  SamplePath p;
  p.grid = uniform_grid(T, J);
  p.values.resize(static_cast<Eigen::Index>(J + 1), 1);
  for (std::size_t j = 0; j <= J; ++j)
    p.values(static_cast<Eigen::Index>(j), 0) = std::sin(p.grid[j]);
  return p;
}

linalg::RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  linalg::RationalMatrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (auto row : rows) {
    std::size_t c = 0;
    for (long v : row)
      m(r, c++) = v;
    ++r;
  }
  return m;
}
} // namespace

TEST(Brownian, IncrementCovariance) {
  const std::size_t R = 100000;
  const QSpec q = QSpec::identity(2);
  const auto grid = uniform_grid(1.0, 4);
  double s00 = 0, s11 = 0, s01 = 0;
  for (std::size_t r = 0; r < R; ++r) {
    const SamplePath p = sample_brownian(q, grid, replicate_seed(99, r));
    const double a = p.increment(2, 1), b = p.increment(2, 2);
    s00 += a * a, s11 += b * b, s01 += a * b;
  }
  const double dt = 0.25, se = dt * std::sqrt(2.0 / R);
  EXPECT_NEAR(s00 / R, dt, 3 * se);
  EXPECT_NEAR(s11 / R, dt, 3 * se);
  EXPECT_NEAR(s01 / R, 0.0, 3 * dt / std::sqrt(static_cast<double>(R)));
}

TEST(Brownian, PiecewiseCovariance) {
  Eigen::MatrixXd q1(1, 1), q2(1, 1);
  q1 << 1.0;
  q2 << 4.0;
  const QSpec q = QSpec::piecewise({0.0, 0.5}, {q1, q2});
  const auto grid = uniform_grid(1.0, 2);
  double a = 0, b = 0;
  const std::size_t R = 40000;
  for (std::size_t r = 0; r < R; ++r) {
    const SamplePath p = sample_brownian(q, grid, r);
    a += std::pow(p.increment(0, 1), 2);
    b += std::pow(p.increment(1, 1), 2);
  }
  EXPECT_NEAR(a / R, 0.5, 3 * 0.5 * std::sqrt(2.0 / R));
  EXPECT_NEAR(b / R, 2.0, 3 * 2.0 * std::sqrt(2.0 / R));
}

TEST(Brownian, DegenerateAndDeterministic) {
  const SamplePath p = sample_brownian(QSpec::identity(2), {0.0}, 1);
  EXPECT_EQ(p.values.rows(), 1);
  EXPECT_EQ(p.values(0, 1), 0.0);
  const auto grid = uniform_grid(1.0, 64);
  EXPECT_EQ(sample_brownian(QSpec::identity(2), grid, 5).values, sample_brownian(QSpec::identity(2), grid, 5).values);
  EXPECT_NE(sample_brownian(QSpec::identity(2), grid, 5).values, sample_brownian(QSpec::identity(2), grid, 6).values);
}

TEST(Brownian, RejectsNonSpd) {
  Eigen::MatrixXd q(2, 2);
  q << 1, 2, 2, 1;
  EXPECT_THROW(QSpec::constant(q), MismatchError);
  q << 1, 0.5, 0, 1;
  EXPECT_THROW(QSpec::constant(q), MismatchError);
  EXPECT_THROW(sample_brownian(QSpec::identity(1), {0.0, 0.5, 0.5}, 1), MismatchError);
}

TEST(DiffusionInput, ReducesToBrownian) {
  const auto grid = uniform_grid(1.0, 32);
  const SamplePath a = sample_diffusion_input({P("0", 2), P("0", 2)}, Eigen::MatrixXd::Identity(2, 2), grid, 3);
  const SamplePath b = sample_brownian(QSpec::identity(2), grid, 3);
  EXPECT_TRUE(a.values.isApprox(b.values, 1e-15));
  EXPECT_EQ(a.values, sample_diffusion_input({P("0", 2), P("0", 2)}, Eigen::MatrixXd::Identity(2, 2), grid, 3).values);
  Eigen::MatrixXd sigma(2, 2);
  sigma << 1, 0, 1, 2;
  QSpec qv = QSpec::identity(1);
  sample_diffusion_input({P("0", 2), P("0", 2)}, sigma, grid, 3, &qv);
  EXPECT_TRUE(qv.at(0.5).isApprox(sigma * sigma.transpose()));
}

TEST(DiffusionInput, OrnsteinUhlenbeckVariance) {
  const auto grid = uniform_grid(10.0, 1000);
  const Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(1, 1);
  const std::size_t R = 4000;
  double s = 0, s2 = 0;
  for (std::size_t r = 0; r < R; ++r) {
    const double x = sample_diffusion_input({P("-x1")}, sigma, grid, r).values(1000, 0);
    s += x, s2 += x * x;
  }
  const double var = s2 / R - std::pow(s / R, 2);
  EXPECT_NEAR(var, 0.5, 0.05 * 0.5);
}

TEST(DiffusionInput, Errors) {
  const auto grid = uniform_grid(1.0, 4);
  EXPECT_THROW(sample_diffusion_input({P("0")}, Eigen::MatrixXd::Zero(1, 1), grid, 1), MismatchError);
  EXPECT_THROW(sample_diffusion_input({P("0")}, Eigen::MatrixXd::Identity(2, 2), grid, 1), MismatchError);
}

TEST(Iterated, PureTimeWords) {
  std::mt19937_64 g(1);
  // A nonuniform grid: k <= 2 is exact, k = 3 is second order.
  std::vector<double> grid{0.0};
  for (int j = 0; j < 200; ++j)
    grid.push_back(grid.back() + 0.001 + 0.004 * static_cast<double>(g() % 1000) / 1000.0);
  const SamplePath p = sample_brownian(QSpec::identity(1), grid, 2);
  const auto t = iterated_stratonovich(p, 3);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    EXPECT_DOUBLE_EQ(t.values(Word{})[j], 1.0);
    EXPECT_NEAR(t.values(Word{0})[j], grid[j], 1e-15);
    EXPECT_NEAR(t.values(Word{0, 0})[j], grid[j] * grid[j] / 2, 1e-15);
  }
  EXPECT_EQ(t.values(Word{1, 0})[0], 0.0);
  auto err3 = [](std::size_t J) {
    const SamplePath q = sample_brownian(QSpec::identity(1), uniform_grid(1.0, J), 1);
    return std::abs(iterated_stratonovich(q, 3).values(Word{0, 0, 0})[J] - 1.0 / 6);
  };
  EXPECT_GT(err3(64) / err3(128), 3.5);
}

TEST(Iterated, StratonovichSquare) {
  const SamplePath p = sample_brownian(QSpec::identity(2), uniform_grid(1.0, 512), 4);
  const auto t = iterated_stratonovich(p, 2);
  for (int i = 1; i <= 2; ++i)
    for (std::size_t j = 0; j <= 512; ++j) {
      const double w = p.values(static_cast<Eigen::Index>(j), i - 1);
      EXPECT_NEAR(t.values(Word{i, i})[j], w * w / 2, 1e-12);
    }
}

TEST(Iterated, OuterVariableCarriesFirstLetter) {
  // I_(1,0)(t) = int_0^t s o dW(s) and I_(0,1)(t) = int_0^t W(s) ds.
  const SamplePath p = smooth_path(2000, 1.0);
  const auto t = iterated_stratonovich(p, 2);
  const double w10 = std::sin(1.0) + std::cos(1.0) - 1.0; // int_0^1 s cos s ds
  const double w01 = 1.0 - std::cos(1.0);                 // int_0^1 sin s ds
  EXPECT_NEAR(t.values(Word{1, 0})[2000], w10, 1e-6);
  EXPECT_NEAR(t.values(Word{0, 1})[2000], w01, 1e-6);
}

TEST(Iterated, ShuffleIdentitySecondOrder) {
  auto defect = [](std::size_t J) {
    const SamplePath p = smooth_path(J, 1.0);
    const int m = 1;
    const auto t = iterated_stratonovich(p, 4);
    double worst = 0;
    const auto words = words_up_to(m, 2);
    for (const auto &u : words)
      for (const auto &v : words) {
        const Series sh = shuffle(u, v, m);
        double rhs = 0;
        for (std::size_t i = 0; i < sh.size(); ++i)
          if (sh.rational_at(i) != 0)
            rhs += sh.rational_at(i).get_d() * t.values_at(i)[J];
        worst = std::max(worst, std::abs(t.values(u)[J] * t.values(v)[J] - rhs));
      }
    return worst;
  };
  const double a = defect(64), b = defect(128), c = defect(256);
  EXPECT_GT(a / b, 3.0);
  EXPECT_GT(b / c, 3.0);
}

TEST(Iterated, ShuffleDefectRefinesOnBrownianPaths) {
  const int m = 1;
  const auto words = words_up_to(m, 2);
  std::vector<double> ms(3, 0.0);
  for (std::size_t r = 0; r < 200; ++r) {
    const SamplePath fine = sample_brownian(QSpec::identity(1), uniform_grid(1.0, 2048), replicate_seed(31, r));
    for (std::size_t l = 0; l < 3; ++l) {
      const SamplePath p = subsample(fine, std::size_t{4} >> l);
      const std::size_t J = p.steps();
      const auto t = iterated_stratonovich(p, 4);
      double worst = 0;
      for (const auto &u : words)
        for (const auto &v : words) {
          const Series sh = shuffle(u, v, m);
          double rhs = 0;
          for (std::size_t i = 0; i < sh.size(); ++i)
            if (sh.rational_at(i) != 0)
              rhs += sh.rational_at(i).get_d() * t.values_at(i)[J];
          worst = std::max(worst, std::abs(t.values(u)[J] * t.values(v)[J] - rhs));
        }
      ms[l] += worst * worst;
    }
  }
  EXPECT_GE(ms[0] / ms[1], 1.2 * 1.2);
  EXPECT_GE(ms[1] / ms[2], 1.2 * 1.2);
}

TEST(CfEvaluate, Examples) {
  const SamplePath p = sample_brownian(QSpec::identity(1), uniform_grid(0.5, 256), 8);
  const auto t = iterated_stratonovich(p, 3);
  Series drift(1, 3);
  drift.set(Word{0}, Scalar(1));
  Series w1(1, 3);
  w1.set(Word{1}, Scalar(1));
  for (std::size_t j = 0; j <= 256; j += 32) {
    EXPECT_NEAR(cf_evaluate(drift, t, j), p.grid[j], 1e-15);
    EXPECT_DOUBLE_EQ(cf_evaluate(w1, t, j), p.values(static_cast<Eigen::Index>(j), 0));
  }
  const Series sq = cf_coefficients(scalar_model("0", "1", "x1^2", 0), 2);
  EXPECT_NEAR(cf_evaluate(sq, t, 256), std::pow(p.values(256, 0), 2), 1e-12);
  EXPECT_THROW(cf_evaluate(Series(1, 4), t, 0), MismatchError);
  EXPECT_THROW(cf_evaluate(Series(2, 2), t, 0), MismatchError);
}

TEST(Simulate, RotationOdeMatchesCosine) {
  AnalyticModel a;
  a.n = 2;
  a.m = 1;
  a.x0 = {1, 0};
  a.fields = {{P("x2", 2), P("-x1", 2)}, {P("0", 2), P("0", 2)}};
  a.readout = P("x1", 2);
  auto err = [&](std::size_t J) {
    const SamplePath p = sample_brownian(QSpec::identity(1), uniform_grid(1.0, J), 3);
    const Trajectory tr = simulate_analytic(a, p);
    double e = 0;
    for (std::size_t j = 0; j <= J; ++j)
      e = std::max(e, std::abs(tr.output[j] - std::cos(p.grid[j])));
    return e;
  };
  EXPECT_LT(err(256), 1e-5);
  EXPECT_GT(err(128) / err(256), 3.5);
}

TEST(Simulate, PureDiffusionIsPath) {
  const SamplePath p = sample_brownian(QSpec::identity(1), uniform_grid(1.0, 300), 3);
  const Trajectory tr = simulate_analytic(scalar_model("0", "1", "x1", 0), p);
  for (std::size_t j = 0; j <= 300; ++j)
    EXPECT_NEAR(tr.output[j], p.values(static_cast<Eigen::Index>(j), 0), 1e-12);
}

TEST(Simulate, HeunVersusItoEulerRefinement) {
  const AnalyticModel a = scalar_model("0", "x1", "x1", 1);
  SimulationOptions ito;
  ito.scheme = Scheme::ito_euler;
  auto rms = [&](std::size_t J) {
    double s = 0;
    for (std::size_t r = 0; r < 1000; ++r) {
      const SamplePath fine = sample_brownian(QSpec::identity(1), uniform_grid(0.5, 1024), replicate_seed(77, r));
      const SamplePath p = subsample(fine, 1024 / J);
      s += std::pow(simulate_analytic(a, p).output[J] - simulate_analytic(a, p, ito).output[J], 2);
    }
    return std::sqrt(s / 1000);
  };
  const double a1 = rms(256), a2 = rms(512), a3 = rms(1024);
  EXPECT_GE(a1 / a2, 1.2);
  EXPECT_GE(a2 / a3, 1.2);
}

TEST(Simulate, DivergenceGuard) {
  const SamplePath p = sample_brownian(QSpec::identity(1), uniform_grid(2.0, 2000), 1);
  EXPECT_THROW(simulate_analytic(scalar_model("x1^2", "0", "x1", 1), p), DivergenceError);
  SimulationOptions tight;
  tight.divergence_bound = 1.5;
  EXPECT_THROW(simulate_analytic(scalar_model("1", "0", "x1", 1), p, tight), DivergenceError);
  EXPECT_THROW(simulate_analytic(scalar_model("1", "0", "x1", 1), sample_brownian(QSpec::identity(2), p.grid, 1)),
               MismatchError);
}

TEST(SimulateBilinear, ConstantAndExponential) {
  BilinearModel b;
  b.n = 1;
  b.m = 1;
  b.x0 = {1};
  b.A = {linalg::RationalMatrix(1, 1), linalg::RationalMatrix(1, 1)};
  b.C = {3};
  const SamplePath p = sample_brownian(QSpec::identity(1), uniform_grid(1.0, 1000), 12);
  for (double y : simulate_bilinear(b, p).output)
    EXPECT_EQ(y, 3.0);
  b.A[1](0, 0) = 1;
  b.C = {1};
  const Trajectory tr = simulate_bilinear(b, p);
  for (std::size_t j = 0; j <= 1000; j += 100)
    EXPECT_NEAR(tr.output[j], std::exp(p.values(static_cast<Eigen::Index>(j), 0)), 5e-3);
}

TEST(SimulateBilinear, MatchesLinearFieldEmbedding) {
  std::mt19937_64 g(40);
  const BilinearModel b = oracle::random_bilinear(g, 3, 2);
  const SamplePath p = sample_brownian(QSpec::identity(2), uniform_grid(0.5, 500), 41);
  const Trajectory x = simulate_bilinear(b, p), y = simulate_analytic(to_analytic(b), p);
  for (std::size_t j = 0; j <= 500; ++j)
    EXPECT_NEAR(x.output[j], y.output[j], 1e-12 * (1 + std::abs(y.output[j])));
}

TEST(SeriesVersusSimulation, NonCommutingOrderIsPathwise) {
  // A0 and A1 do not commute; only the correct word order tracks the simulation.
  BilinearModel b;
  b.n = 2;
  b.m = 1;
  b.x0 = {1, 0};
  b.C = {1, 2};
  b.A = {mat({{0, 1}, {0, 0}}), mat({{0, 0}, {1, 0}})};
  const int N = 6;
  const Series s = bilinear_coefficients(b, N);
  Series reversed(1, N);
  for (const auto &w : words_up_to(1, N))
    reversed.set(w, s.coefficient(w.reversed()));
  ASSERT_NE(s, reversed);
  double good = 0, bad = 0;
  for (std::size_t r = 0; r < 20; ++r) {
    const SamplePath p = sample_brownian(QSpec::identity(1), uniform_grid(0.5, 4096), replicate_seed(5, r));
    const auto t = iterated_stratonovich(p, N);
    const double y = simulate_bilinear(b, p).output[4096];
    good += std::abs(cf_evaluate(s, t, 4096) - y);
    bad += std::abs(cf_evaluate(reversed, t, 4096) - y);
  }
  EXPECT_LT(good, 0.1 * bad);
}

TEST(SeriesVersusSimulation, TwoStepDerivationDegreeTwo) {
  // Y(t) = Y(0) + sum_i int_0^t [S_iY(0) + sum_j S_jS_iY(0) W_j(s)] o dW_i(s) + rest,
  // reconstructed directly from Lie derivatives and compared with the degree-2 series.
  const AnalyticModel a = scalar_model("x1", "1/2*x1 + 1", "x1^2", Rational(1, 2));
  const Series s = cf_coefficients(a, 2);
  const SamplePath p = sample_brownian(QSpec::identity(1), uniform_grid(0.25, 2048), 9);
  const auto t = iterated_stratonovich(p, 2);
  std::vector<MultiPoly> z{lie_derivative(a.fields[0], a.readout), lie_derivative(a.fields[1], a.readout)};
  const std::vector<Rational> x0 = a.x0;
  double y = a.readout.evaluate(std::span<const Rational>(x0)).get_d();
  for (std::size_t k = 0; k < 2048; ++k)
    for (int i = 0; i <= 1; ++i) {
      auto integrand = [&](std::size_t j) {
        double v = z[static_cast<std::size_t>(i)].evaluate(std::span<const Rational>(x0)).get_d();
        for (int l = 0; l <= 1; ++l)
          v += lie_derivative(a.fields[static_cast<std::size_t>(l)], z[static_cast<std::size_t>(i)])
                   .evaluate(std::span<const Rational>(x0))
                   .get_d() *
               (l == 0 ? p.grid[j] : p.values(static_cast<Eigen::Index>(j), 0));
        return v;
      };
      y += 0.5 * (integrand(k) + integrand(k + 1)) * p.increment(k, i);
    }
  EXPECT_NEAR(cf_evaluate(s, t, 2048), y, 1e-9);
  const double sim = simulate_analytic(a, p).output[2048];
  const Series deep = cf_coefficients(a, 6);
  const auto t6 = iterated_stratonovich(p, 6);
  EXPECT_LT(std::abs(cf_evaluate(deep, t6, 2048) - sim), 0.1 * std::abs(cf_evaluate(s, t, 2048) - sim));
}

TEST(Determinism, BitIdenticalTrajectories) {
  const AnalyticModel a = scalar_model("x1", "1", "x1^2", Rational(1, 2));
  const auto grid = uniform_grid(0.25, 512);
  const Trajectory x = simulate_analytic(a, sample_brownian(QSpec::identity(1), grid, 123));
  const Trajectory y = simulate_analytic(a, sample_brownian(QSpec::identity(1), grid, 123));
  EXPECT_EQ(x.output, y.output);
}

TEST(Zakai, BuildAndConservation) {
  const auto gen = mat({{-1, 1}, {1, -1}});
  BilinearModel b = zakai_build(gen, {0, 0}, {1, 1}, {Rational(1, 2), Rational(1, 2)});
  EXPECT_EQ(b.A[1], linalg::RationalMatrix(2, 2));
  EXPECT_EQ(b.A[0], gen);
  const SamplePath p = sample_brownian(QSpec::identity(1), uniform_grid(1.0, 1000), 2);
  for (double y : simulate_bilinear(b, p).output)
    EXPECT_NEAR(y, 1.0, 1e-13);
  const BilinearModel c = zakai_build(gen, {0, 1}, {1, 1}, {Rational(1, 2), Rational(1, 2)});
  EXPECT_EQ(c.A[0](1, 1), Rational(-3, 2));
  EXPECT_EQ(c.A[1](1, 1), 1);
}

TEST(Zakai, PositivityAndRankBound) {
  const BilinearModel b =
      zakai_build(mat({{-1, 1}, {1, -1}}), {0, 1}, {1, 1}, {Rational(1, 2), Rational(1, 2)});
  for (std::size_t r = 0; r < 20; ++r) {
    const SamplePath p = sample_brownian(QSpec::identity(1), uniform_grid(1.0, 1024), r);
    for (double y : simulate_bilinear(b, p).output)
      ASSERT_GT(y, 0.0);
  }
  EXPECT_LE(rank_exact(hankel_build(bilinear_coefficients(b, 6), 3, 3)).rank, 2u);
}

TEST(Zakai, Normalization) {
  const auto gen = mat({{-1, 1}, {1, -1}});
  const std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
  const BilinearModel ones = zakai_build(gen, {0, 0}, {1, 1}, half);
  const BilinearModel ind = zakai_build(gen, {0, 0}, {0, 1}, half);
  const SamplePath p = sample_brownian(QSpec::identity(1), uniform_grid(1.0, 500), 2);
  const auto s1 = simulate_bilinear(ones, p).output, sphi = simulate_bilinear(ind, p).output;
  for (double v : normalize_filter(s1, s1))
    EXPECT_EQ(v, 1.0);
  for (double v : normalize_filter(sphi, s1))
    EXPECT_NEAR(v, 0.5, 1e-12);
  const BilinearModel obs = zakai_build(gen, {0, 1}, {0, 1}, half);
  const BilinearModel obs1 = zakai_build(gen, {0, 1}, {1, 1}, half);
  for (double v : normalize_filter(simulate_bilinear(obs, p).output, simulate_bilinear(obs1, p).output)) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_THROW(normalize_filter({1.0}, {0.0}), Error);
}

TEST(Zakai, ValidatesInputs) {
  const std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
  EXPECT_THROW(zakai_build(mat({{-1, 2}, {1, -1}}), {0, 1}, {1, 1}, half), MismatchError);
  EXPECT_THROW(zakai_build(mat({{1, -1}, {1, -1}}), {0, 1}, {1, 1}, half), MismatchError);
  EXPECT_THROW(zakai_build(mat({{-1, 1}, {1, -1}}), {0, 1}, {1, 1}, {1, 1}), MismatchError);
  EXPECT_THROW(zakai_build(mat({{-1, 1}, {1, -1}}), {0}, {1, 1}, half), MismatchError);
}
