#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cfreal/paths/sample_path.hpp"
#include "cfreal/symdiff/polynomial.hpp"

namespace cfreal {

/// Read-only view of a path as a piecewise-constant cadlag function, with an
/// optional stop index (values frozen after it) and additive bumps
/// h 1_{[t_k, T]} e_i.
class PathView {
public:
  explicit PathView(const SamplePath &path) : path_(&path), stop_(path.steps()) {}

  const SamplePath &path() const noexcept { return *path_; }
  double time(std::size_t j) const { return path_->grid[j]; }
  int channels() const noexcept { return path_->channels(); }

  /// W_i(t_j) for channel i in 1..m.
  double value(std::size_t j, int i) const;

  PathView stopped(std::size_t k) const;
  PathView bumped(std::size_t k, int i, double h) const;

private:
  struct Bump {
    std::size_t from;
    int channel;
    double size;
  };
  const SamplePath *path_;
  std::size_t stop_;
  std::vector<Bump> bumps_;
};

/// A causal path functional evaluated at grid time t_k; implementations may
/// read only value(j, .) for j <= k.
class CausalFunctional {
public:
  virtual ~CausalFunctional() = default;
  virtual double evaluate(std::size_t k, const PathView &w) const = 0;
  virtual std::string name() const = 0;
  /// Number of path channels the functional reads.
  virtual int channels() const = 0;
};

/// F(t, w) = f(w_1(t), ..., w_m(t), t); the polynomial has m+1 variables,
/// x1..xm for the path coordinates and x_{m+1} for time.
class MemorylessFunctional : public CausalFunctional {
public:
  MemorylessFunctional(MultiPoly f, int channels);
  double evaluate(std::size_t k, const PathView &w) const override;
  std::string name() const override;
  int channels() const override { return channels_; }

private:
  MultiPoly poly_;
  CompiledPoly f_;
  int channels_;
};

/// F(t, w) = int_0^t w_i(s) ds on the piecewise-constant path (left-point sum).
class RunningIntegral : public CausalFunctional {
public:
  RunningIntegral(int channel, int channels) : channel_(channel), channels_(channels) {}
  double evaluate(std::size_t k, const PathView &w) const override;
  std::string name() const override { return "integral(w" + std::to_string(channel_) + ")"; }
  int channels() const override { return channels_; }

private:
  int channel_, channels_;
};

/// F(t_k, w) = sum_{j<k} kappa(t_k - t_{j+1}) (w_i(t_{j+1}) - w_i(t_j)) for a
/// polynomial kernel kappa (coefficients in increasing degree).
class LinearFilter : public CausalFunctional {
public:
  LinearFilter(std::vector<double> kernel, int channel, int channels);
  double evaluate(std::size_t k, const PathView &w) const override;
  std::string name() const override;
  int channels() const override { return channels_; }
  double kernel(double s) const;

private:
  std::vector<double> kernel_;
  int channel_, channels_;
};

/// Builds a functional from its command-line spelling:
///   "poly:<expr>"  memoryless, x1..xm path, x{m+1} time
///   "integral:i"   running integral of channel i
///   "filter:c0,c1,...[@i]" linear filter, kernel sum_p c_p s^p, channel i (default 1)
std::unique_ptr<CausalFunctional> make_functional(const std::string &spelling, int channels);

enum class Difference { forward, central };

/// sqrt(dt_k) * max(1, max_{j<=k,i} |w_i(t_j)|).
double default_bump(const SamplePath &path, std::size_t k);

/// (F(t_{k+c}, w stopped at t_k) - F(t_k, w)) / (t_{k+c} - t_k). Throws
/// std::out_of_range when t_{k+c} is beyond the horizon.
double horizontal_derivative(const CausalFunctional &F, const PathView &w, std::size_t k, std::size_t cells = 1);

/// Difference quotient under the bump h 1_{[t_k,T]} e_i.
double vertical_derivative(const CausalFunctional &F, const PathView &w, std::size_t k, int i, double h,
                           Difference diff = Difference::central);

/// d_i d_j F: central difference in i of the central difference in j.
double vertical_second_derivative(const CausalFunctional &F, const PathView &w, std::size_t k, int i, int j,
                                  double h);

} // namespace cfreal
