#include <iostream>

#include <CLI11.hpp>

#include "cfreal/cli/commands.hpp"

int main(int argc, char **argv) {
  cfreal::cli::RunConfig cfg;
  CLI::App app{"Chen-Fliess series, Hankel ranks and realizations of stochastic systems"};
  app.require_subcommand(1);

  std::string mode = "rational";
  auto common = [&](CLI::App *sub) {
    sub->add_option("--model", cfg.model, "model file");
    sub->add_option("--series", cfg.series, "series file");
    sub->add_option("--deg", cfg.degree, "truncation degree N");
    sub->add_option("--mode", mode, "scalar mode")->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--tol", cfg.tol, "relative singular-value tolerance");
  };
  auto stochastic = [&](CLI::App *sub) {
    sub->add_option("--horizon", cfg.horizon, "time horizon T");
    sub->add_option("--grid", cfg.grid, "grid size J");
    sub->add_option("--reps", cfg.reps, "replicates");
    sub->add_option("--seed", cfg.seed, "random seed (required)");
  };

  auto *coeffs = app.add_subcommand("coeffs", "write the coefficient series of a model");
  common(coeffs);
  coeffs->add_option("--max-terms", cfg.max_terms, "monomial cap for symbolic Lie derivatives");

  for (auto [name, help] : {std::pair{"rank", "Hankel and Lie rank of a series"}, std::pair{"lierank", "Lie rank of a series"}}) {
    auto *sub = app.add_subcommand(name, help);
    common(sub);
    sub->add_option("--rows", cfg.rows, "row degree d_r");
    sub->add_option("--cols", cfg.cols, "column degree d_c");
    sub->add_option("--bracket", cfg.bracket, "Lyndon bracket degree N_b");
    sub->add_option("--obs", cfg.obs, "observation degree N_o");
  }

  auto *realize = app.add_subcommand("realize", "bilinear realization of a rational series");
  common(realize);

  for (auto [name, help] : {std::pair{"simulate", "simulate a model and its truncated series"},
                            std::pair{"compare", "truncation-error study of the series against simulation"}}) {
    auto *sub = app.add_subcommand(name, help);
    common(sub);
    stochastic(sub);
    sub->add_option("--scheme", cfg.scheme, "heun or ito")->check(CLI::IsMember({"heun", "ito"}));
  }

  auto *ito = app.add_subcommand("ito-check", "functional Ito formula residuals under grid refinement");
  common(ito);
  stochastic(ito);
  ito->add_option("--functional", cfg.functional, "poly:<expr>, integral:<i> or filter:<c0,c1,...>[@i]");
  ito->add_option("--channels", cfg.channels, "path dimension m");
  ito->add_option("--levels", cfg.levels, "number of grid halvings + 1");

  auto *hijab = app.add_subcommand("hijab-check", "drift/diffusion decomposition check for an m = 1 model");
  common(hijab);
  stochastic(hijab);
  hijab->add_option("--levels", cfg.levels, "number of grid halvings + 1");

  auto *zakai = app.add_subcommand("demo-zakai", "unnormalized filter of a finite-state chain");
  common(zakai);
  stochastic(zakai);
  zakai->add_option("--generator", cfg.generator, "generator rows, e.g. \"-1,1;1,-1\"");
  zakai->add_option("--obs-values", cfg.observation, "observation function h per state");
  zakai->add_option("--init", cfg.init, "initial distribution");

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.mode = cfreal::parse_scalar_mode(mode);
  return cfreal::cli::run_command(cfg, std::cout, std::cerr);
}
