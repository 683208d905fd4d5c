#include "cfreal/dupire/functional.hpp"

#include <cmath>
#include <sstream>

#include "cfreal/errors.hpp"
#include "cfreal/symdiff/parser.hpp"

namespace cfreal {

double PathView::value(std::size_t j, int i) const {
  double v = path_->values(static_cast<Eigen::Index>(std::min(j, stop_)), i - 1);
  for (const auto &b : bumps_)
    if (b.channel == i && j >= b.from)
      v += b.size;
  return v;
}

PathView PathView::stopped(std::size_t k) const {
  PathView v = *this;
  v.stop_ = std::min(stop_, k);
  return v;
}

PathView PathView::bumped(std::size_t k, int i, double h) const {
  if (i < 1 || i > channels())
    throw std::out_of_range("PathView::bumped: channel " + std::to_string(i) + " outside 1.." +
                            std::to_string(channels()));
  PathView v = *this;
  v.bumps_.push_back({k, i, h});
  return v;
}

MemorylessFunctional::MemorylessFunctional(MultiPoly f, int channels)
    : poly_(std::move(f)), f_(poly_), channels_(channels) {
  if (poly_.num_vars() != static_cast<std::size_t>(channels) + 1)
    throw MismatchError("MemorylessFunctional: polynomial needs m+1 variables (path then time)");
}

double MemorylessFunctional::evaluate(std::size_t k, const PathView &w) const {
  double x[16];
  std::vector<double> big;
  double *buf = x;
  if (channels_ + 1 > 16) {
    big.resize(static_cast<std::size_t>(channels_) + 1);
    buf = big.data();
  }
  for (int i = 1; i <= channels_; ++i)
    buf[i - 1] = w.value(k, i);
  buf[channels_] = w.time(k);
  return f_(std::span<const double>(buf, static_cast<std::size_t>(channels_) + 1));
}

std::string MemorylessFunctional::name() const { return "poly(" + poly_.to_string() + ")"; }

double RunningIntegral::evaluate(std::size_t k, const PathView &w) const {
  double s = 0;
  for (std::size_t j = 0; j < k; ++j)
    s += w.value(j, channel_) * (w.time(j + 1) - w.time(j));
  return s;
}

LinearFilter::LinearFilter(std::vector<double> kernel, int channel, int channels)
    : kernel_(std::move(kernel)), channel_(channel), channels_(channels) {
  if (kernel_.empty())
    kernel_.push_back(0.0);
  if (channel < 1 || channel > channels)
    throw std::out_of_range("LinearFilter: channel outside the path");
}

double LinearFilter::kernel(double s) const {
  double v = 0;
  for (auto it = kernel_.rbegin(); it != kernel_.rend(); ++it)
    v = v * s + *it;
  return v;
}

double LinearFilter::evaluate(std::size_t k, const PathView &w) const {
  const double t = w.time(k);
  double s = 0, prev = w.value(0, channel_);
  for (std::size_t j = 0; j < k; ++j) {
    const double next = w.value(j + 1, channel_);
    s += kernel(t - w.time(j + 1)) * (next - prev);
    prev = next;
  }
  return s;
}

std::string LinearFilter::name() const {
  std::ostringstream os;
  os << "filter(";
  for (std::size_t p = 0; p < kernel_.size(); ++p)
    os << (p ? "," : "") << format_double(kernel_[p]);
  os << "@" << channel_ << ")";
  return os.str();
}

std::unique_ptr<CausalFunctional> make_functional(const std::string &spelling, int channels) {
  const auto colon = spelling.find(':');
  const std::string kind = spelling.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spelling.substr(colon + 1);
  auto channel_of = [&](const std::string &text) {
    try {
      std::size_t used = 0;
      const int i = std::stoi(text, &used);
      if (used != text.size() || i < 1 || i > channels)
        throw std::invalid_argument("");
      return i;
    } catch (const std::exception &) {
      throw std::invalid_argument("functional '" + spelling + "': channel must be in 1.." + std::to_string(channels));
    }
  };
  if (kind == "poly")
    return std::make_unique<MemorylessFunctional>(
        parse_polynomial(arg, static_cast<std::size_t>(channels) + 1, 1, static_cast<int>(colon) + 1), channels);
  if (kind == "integral")
    return std::make_unique<RunningIntegral>(arg.empty() ? 1 : channel_of(arg), channels);
  if (kind == "filter") {
    std::string coeffs = arg;
    int channel = 1;
    if (auto at = arg.find('@'); at != std::string::npos) {
      coeffs = arg.substr(0, at);
      channel = channel_of(arg.substr(at + 1));
    }
    std::vector<double> kernel;
    std::stringstream ss(coeffs);
    for (std::string item; std::getline(ss, item, ',');)
      kernel.push_back(parse_rational(item).get_d());
    if (kernel.empty())
      throw std::invalid_argument("functional '" + spelling + "': empty kernel");
    return std::make_unique<LinearFilter>(std::move(kernel), channel, channels);
  }
  throw std::invalid_argument("unknown functional '" + spelling + "' (expected poly:, integral: or filter:)");
}

double default_bump(const SamplePath &path, std::size_t k) {
  const std::size_t cell = std::min(k, path.steps() == 0 ? 0 : path.steps() - 1);
  const double dt = path.steps() == 0 ? 1.0 : path.dt(cell);
  double amp = 1.0;
  if (path.values.size() > 0)
    amp = std::max(amp, path.values.topRows(static_cast<Eigen::Index>(k + 1)).cwiseAbs().maxCoeff());
  return std::sqrt(dt) * amp;
}

double horizontal_derivative(const CausalFunctional &F, const PathView &w, std::size_t k, std::size_t cells) {
  if (cells == 0)
    throw std::invalid_argument("horizontal_derivative: step must span at least one cell");
  if (k + cells > w.path().steps())
    throw std::out_of_range("horizontal_derivative: t + h beyond the horizon");
  const PathView s = w.stopped(k);
  return (F.evaluate(k + cells, s) - F.evaluate(k, s)) / (w.time(k + cells) - w.time(k));
}

double vertical_derivative(const CausalFunctional &F, const PathView &w, std::size_t k, int i, double h,
                           Difference diff) {
  if (!(h > 0))
    throw std::invalid_argument("vertical_derivative: bump must be positive");
  if (diff == Difference::forward)
    return (F.evaluate(k, w.bumped(k, i, h)) - F.evaluate(k, w)) / h;
  return (F.evaluate(k, w.bumped(k, i, h)) - F.evaluate(k, w.bumped(k, i, -h))) / (2 * h);
}

double vertical_second_derivative(const CausalFunctional &F, const PathView &w, std::size_t k, int i, int j,
                                  double h) {
  const PathView up = w.bumped(k, j, h), down = w.bumped(k, j, -h);
  return (vertical_derivative(F, up, k, i, h) - vertical_derivative(F, down, k, i, h)) / (2 * h);
}

} // namespace cfreal
