#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cfreal/fps/scalar.hpp"

namespace cfreal::cli {

/// Parsed command line. Unset optionals fall back to per-command defaults.
struct RunConfig {
  std::string command;
  std::optional<std::string> model, series;
  std::optional<int> degree;
  std::optional<int> rows, cols;
  std::optional<int> bracket, obs;
  std::optional<double> horizon;
  std::optional<std::size_t> grid;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  double tol = 1e-9;
  ScalarMode mode = ScalarMode::rational;
  std::string out = ".";
  // command-specific
  std::string functional = "poly:x1^2";
  int channels = 1;
  int levels = 3;
  std::string scheme = "heun";
  std::size_t max_terms = 1'000'000;
  std::optional<std::string> generator, observation, init;
};

/// Runs one subcommand; returns the process exit code. Diagnostics go to err.
int run_command(const RunConfig &cfg, std::ostream &out, std::ostream &err);

} // namespace cfreal::cli
