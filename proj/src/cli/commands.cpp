#include "cfreal/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cfreal/cli/io_util.hpp"
#include "cfreal/dupire/ito_check.hpp"
#include "cfreal/fps/series_io.hpp"
#include "cfreal/hankel/hankel.hpp"
#include "cfreal/paths/iterated.hpp"
#include "cfreal/paths/parallel.hpp"
#include "cfreal/paths/simulate.hpp"
#include "cfreal/paths/zakai.hpp"
#include "cfreal/realize/realize.hpp"
#include "cfreal/symdiff/coefficients.hpp"
#include "cfreal/symdiff/model_io.hpp"
#include "cfreal/symdiff/parser.hpp"

namespace cfreal::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

/// Bad flags or missing inputs; reported without a stack of context.
struct UsageError : Error {
  using Error::Error;
};

std::string dump(const json &j) { return j.dump(2) + "\n"; }

Model load_model(const RunConfig &cfg) {
  if (!cfg.model)
    throw UsageError("--model is required for '" + cfg.command + "'");
  const std::string text = read_file(*cfg.model);
  try {
    return model_from_string(text);
  } catch (const ParseError &e) {
    throw Error(*cfg.model + ": " + e.what());
  }
}

Series coefficients_of(const Model &model, int degree, const RunConfig &cfg) {
  if (degree < 0)
    throw UsageError("--deg must be nonnegative");
  if (const auto *b = std::get_if<BilinearModel>(&model))
    return bilinear_coefficients(*b, degree);
  CoefficientOptions opts;
  opts.max_terms = cfg.max_terms;
  return cf_coefficients(std::get<AnalyticModel>(model), degree, opts);
}

/// Series from --series, or from --model with --deg.
Series load_series(const RunConfig &cfg) {
  if (cfg.series) {
    Series s = series_from_string(read_file(*cfg.series));
    if (cfg.degree) {
      if (*cfg.degree > s.max_degree())
        throw InsufficientDegree("insufficient degree: series file is truncated at " +
                                 std::to_string(s.max_degree()) + ", requested " + std::to_string(*cfg.degree));
      s = s.truncated(*cfg.degree);
    }
    return s;
  }
  if (!cfg.model)
    throw UsageError("either --series or --model is required for '" + cfg.command + "'");
  if (!cfg.degree)
    throw UsageError("--deg is required when coefficients are generated from --model");
  return coefficients_of(load_model(cfg), *cfg.degree, cfg);
}

std::uint64_t require_seed(const RunConfig &cfg) {
  if (!cfg.seed)
    throw UsageError("--seed is required for stochastic command '" + cfg.command + "'");
  return *cfg.seed;
}

json rank_json(const RankReport &r) {
  json j;
  j["kind"] = r.kind;
  j["rank"] = r.rank;
  j["mode"] = r.mode == RankMode::exact ? "exact" : "numeric";
  if (r.kind == "hankel") {
    j["rows_degree"] = r.row_degree;
    j["cols_degree"] = r.col_degree;
  } else {
    j["bracket_degree"] = r.bracket_degree;
    j["obs_degree"] = r.obs_degree;
  }
  if (r.tolerance)
    j["tolerance"] = *r.tolerance;
  if (!r.singular_values.empty())
    j["singular_values"] = r.singular_values;
  j["note"] = "truncated rank: lower bound for the untruncated rank";
  return j;
}

std::string describe(const RankReport &r) {
  std::ostringstream os;
  if (r.kind == "hankel")
    os << "hankel rank " << r.rank << " (rows <= " << r.row_degree << ", cols <= " << r.col_degree;
  else
    os << "lie rank " << r.rank << " (brackets <= " << r.bracket_degree << ", obs <= " << r.obs_degree;
  os << ", " << (r.mode == RankMode::exact ? "exact" : "numeric tol " + format_double(*r.tolerance)) << ")";
  return os.str();
}

Series in_mode(const Series &s, ScalarMode mode) {
  return mode == ScalarMode::real && s.mode() == ScalarMode::rational ? s.to_real() : s;
}

std::vector<Rational> parse_list(const std::string &text, const std::string &flag) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      v.push_back(parse_rational(item));
    } catch (const ParseError &e) {
      throw UsageError(flag + ": " + e.what());
    }
  }
  return v;
}

linalg::RationalMatrix parse_matrix(const std::string &text, const std::string &flag) {
  std::vector<std::vector<Rational>> rows;
  std::stringstream ss(text);
  for (std::string row; std::getline(ss, row, ';');)
    rows.push_back(parse_list(row, flag));
  if (rows.empty())
    throw UsageError(flag + ": empty matrix");
  linalg::RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols())
      throw UsageError(flag + ": ragged matrix");
    for (std::size_t c = 0; c < m.cols(); ++c)
      m(r, c) = rows[r][c];
  }
  return m;
}

json refinement_json(const std::vector<std::size_t> &grids, const RefinementSeries &s) {
  json j;
  j["grid_sizes"] = grids;
  j["rms"] = s.rms;
  json ratios = json::array();
  for (double r : s.ratios)
    ratios.push_back(std::isfinite(r) ? json(r) : json("inf"));
  j["decay_factors"] = ratios;
  j["min_decay_factor"] = 1.2;
  j["floor"] = kResidualFloor;
  j["decays"] = s.decays();
  return j;
}

RefinementConfig refinement_config(const RunConfig &cfg) {
  RefinementConfig rc;
  rc.horizon = cfg.horizon.value_or(1.0);
  rc.base_steps = cfg.grid.value_or(512);
  rc.levels = cfg.levels;
  rc.replicates = cfg.reps.value_or(200);
  rc.seed = require_seed(cfg);
  return rc;
}

json config_json(const RefinementConfig &rc) {
  return json{{"horizon", rc.horizon}, {"base_grid", rc.base_steps}, {"levels", rc.levels},
              {"replicates", rc.replicates}, {"seed", rc.seed}};
}

std::string csv_number(double x) { return format_double(x); }

// ---------------------------------------------------------------------------

int cmd_coeffs(const RunConfig &cfg, std::ostream &out) {
  if (!cfg.degree)
    throw UsageError("--deg is required for 'coeffs'");
  const Model model = load_model(cfg);
  Series s = coefficients_of(model, *cfg.degree, cfg);
  s = in_mode(s, cfg.mode);
  const fs::path dir = cfg.out;
  write_file_atomic(dir / "series.cfs", series_to_string(s));
  const auto per = s.nonzero_per_degree();
  std::size_t total = 0;
  for (auto c : per)
    total += c;
  json j;
  j["command"] = "coeffs";
  j["model"] = *cfg.model;
  j["max_letter"] = s.max_letter();
  j["degree"] = s.max_degree();
  j["mode"] = to_string(s.mode());
  j["nonzero_per_degree"] = per;
  j["nonzero_total"] = total;
  write_file_atomic(dir / "coeffs_summary.json", dump(j));
  out << "wrote " << (dir / "series.cfs").string() << ": degree " << s.max_degree() << ", " << total
      << " nonzero coefficients\n";
  return 0;
}

int cmd_rank(const RunConfig &cfg, std::ostream &out, bool hankel, bool lie) {
  Series s = in_mode(load_series(cfg), cfg.mode);
  const int N = s.max_degree();
  json j;
  j["command"] = cfg.command;
  j["degree"] = N;
  j["mode"] = to_string(s.mode());
  std::optional<RankReport> rh, rl;
  if (hankel) {
    const int rows = cfg.rows.value_or(N / 2);
    const int cols = cfg.cols.value_or(N - rows);
    if (rows < 0 || cols < 0)
      throw UsageError("--rows and --cols must be nonnegative");
    if (rows + cols > N)
      throw InsufficientDegree("insufficient degree: rows + cols = " + std::to_string(rows + cols) +
                               " exceeds series degree " + std::to_string(N));
    const HankelBlock h = hankel_build(s, rows, cols);
    rh = s.mode() == ScalarMode::rational ? rank_exact(h) : rank_numeric(h, cfg.tol);
    j["hankel"] = rank_json(*rh);
    write_file_atomic(fs::path(cfg.out) / "hankel.csv", hankel_to_csv(h));
    out << describe(*rh) << "\n";
  }
  if (lie) {
    const int bracket = cfg.bracket.value_or(N - N / 2);
    const int obs = cfg.obs.value_or(N - bracket);
    if (bracket < 1 || obs < 0)
      throw UsageError("--bracket must be positive and --obs nonnegative");
    if (bracket + obs > N)
      throw InsufficientDegree("insufficient degree: bracket + obs = " + std::to_string(bracket + obs) +
                               " exceeds series degree " + std::to_string(N));
    rl = lie_rank(s, bracket, obs, cfg.tol);
    j["lie"] = rank_json(*rl);
    out << describe(*rl) << "\n";
  }
  write_file_atomic(fs::path(cfg.out) / (cfg.command + "_report.json"), dump(j));
  return 0;
}

int cmd_realize(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  const Series s = load_series(cfg);
  if (s.mode() != ScalarMode::rational || cfg.mode != ScalarMode::rational)
    throw UsageError("realize works in exact rational mode only");
  const int budget = cfg.degree.value_or(s.max_degree());
  json j;
  j["command"] = "realize";
  j["degree_budget"] = budget;
  try {
    const RealizationResult r = bilinear_realize(s, budget);
    const Discrepancy d = verify_realization(r.model, s, budget);
    j["status"] = "ok";
    j["dimension"] = r.model.n;
    json words = json::array();
    for (const auto &w : r.basis_words)
      words.push_back("(" + w.to_string() + ")");
    j["basis_words"] = words;
    j["rank_lower"] = r.rank_lower;
    j["rank_upper"] = r.rank_upper;
    j["verified_degree"] = d.degree;
    j["max_discrepancy"] = d.max_abs.to_string();
    std::ostringstream model;
    write_model(model, r.model);
    write_file_atomic(fs::path(cfg.out) / "realized.model", model.str());
    write_file_atomic(fs::path(cfg.out) / "realize_report.json", dump(j));
    out << "realized dimension " << r.model.n << ", verified to degree " << d.degree << ", max discrepancy "
        << d.max_abs.to_string() << "\n";
    return 0;
  } catch (const RealizationError &e) {
    j["status"] = "failed";
    j["reason"] = e.what();
    write_file_atomic(fs::path(cfg.out) / "realize_report.json", dump(j));
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

struct ReplicateRun {
  bool diverged = false;
  std::string reason;
  std::vector<double> errors; // |Y_N(T) - Y_sim(T)| for N = 0..deg
};

int cmd_simulate_or_compare(const RunConfig &cfg, std::ostream &out, bool compare) {
  const std::uint64_t seed = require_seed(cfg);
  const Model model = load_model(cfg);
  const AnalyticModel am =
      std::holds_alternative<AnalyticModel>(model) ? std::get<AnalyticModel>(model) : to_analytic(std::get<BilinearModel>(model));
  const int m = am.m;
  const double T = cfg.horizon.value_or(0.25);
  const std::size_t J = cfg.grid.value_or(4096);
  const std::size_t reps = cfg.reps.value_or(compare ? 200 : 1);
  const int deg = cfg.degree.value_or(compare ? 6 : 4);
  if (J == 0 || reps == 0 || !(T > 0) || deg < 0)
    throw UsageError("--horizon, --grid and --reps must be positive");
  SimulationOptions so;
  if (cfg.scheme == "ito")
    so.scheme = Scheme::ito_euler;
  else if (cfg.scheme != "heun")
    throw UsageError("--scheme must be heun or ito");
  const Series s = coefficients_of(model, deg, cfg);
  const auto grid = uniform_grid(T, J);
  const QSpec q = QSpec::identity(m);
  std::vector<ReplicateRun> runs(reps);
  std::vector<std::string> csvs(compare ? 0 : reps);
  parallel_for(reps, [&](std::size_t r) {
    const SamplePath path = sample_brownian(q, grid, replicate_seed(seed, r));
    ReplicateRun &run = runs[r];
    Trajectory tr;
    try {
      tr = simulate_analytic(am, path, so);
    } catch (const DivergenceError &e) {
      run.diverged = true;
      run.reason = e.what();
      return;
    }
    const IteratedIntegralTable table = iterated_stratonovich(path, deg);
    for (int n = 0; n <= deg; ++n)
      run.errors.push_back(std::abs(cf_evaluate(s, table, J, n) - tr.output[J]));
    if (!compare) {
      std::ostringstream os;
      os << "t";
      for (int i = 1; i <= m; ++i)
        os << ",W" << i;
      os << ",Y_sim,Y_cf\n";
      for (std::size_t j = 0; j <= J; ++j) {
        os << csv_number(grid[j]);
        for (int i = 0; i < m; ++i)
          os << "," << csv_number(path.values(static_cast<Eigen::Index>(j), i));
        os << "," << csv_number(tr.output[j]) << "," << csv_number(cf_evaluate(s, table, j)) << "\n";
      }
      csvs[r] = os.str();
    }
  });
  for (std::size_t r = 0; r < csvs.size(); ++r)
    if (!csvs[r].empty())
      write_file_atomic(fs::path(cfg.out) / ("trajectory_rep" + std::to_string(r) + ".csv"), csvs[r]);

  json j;
  j["command"] = cfg.command;
  j["model"] = *cfg.model;
  j["horizon"] = T;
  j["grid"] = J;
  j["replicates"] = reps;
  j["seed"] = seed;
  j["scheme"] = cfg.scheme;
  j["max_degree"] = deg;
  std::size_t diverged = 0;
  for (const auto &r : runs)
    diverged += r.diverged;
  j["diverged_replicates"] = diverged;
  json per = json::array();
  std::vector<double> medians;
  for (int n = 0; n <= deg; ++n) {
    std::vector<double> e;
    for (const auto &r : runs)
      if (!r.diverged)
        e.push_back(r.errors[static_cast<std::size_t>(n)]);
    if (e.empty())
      break;
    double sq = 0;
    for (double v : e)
      sq += v * v;
    std::sort(e.begin(), e.end());
    const double median = e.size() % 2 ? e[e.size() / 2] : 0.5 * (e[e.size() / 2 - 1] + e[e.size() / 2]);
    medians.push_back(median);
    per.push_back({{"degree", n}, {"median_abs_error", median}, {"rms_error", std::sqrt(sq / static_cast<double>(e.size()))}});
  }
  j["truncation_errors"] = per;
  bool monotone = true;
  for (std::size_t n = 3; n < medians.size(); ++n)
    monotone = monotone && medians[n] <= medians[n - 1];
  j["median_nonincreasing_from_degree_2"] = monotone;
  const std::string name = compare ? "compare_summary.json" : "simulate_summary.json";
  write_file_atomic(fs::path(cfg.out) / name, dump(j));
  out << cfg.command << ": " << reps - diverged << "/" << reps << " replicates";
  if (!medians.empty())
    out << ", median |Y_" << medians.size() - 1 << "(T) - Y_sim(T)| = " << format_double(medians.back());
  out << "\n";
  return diverged == reps ? 4 : 0;
}

int cmd_ito_check(const RunConfig &cfg, std::ostream &out) {
  const RefinementConfig rc = refinement_config(cfg);
  const auto F = make_functional(cfg.functional, cfg.channels);
  const ItoResidualReport rep =
      functional_ito_residual(*F, QSpec::identity(cfg.channels), rc);
  json j;
  j["command"] = "ito-check";
  j["functional"] = rep.functional;
  j["config"] = config_json(rc);
  j["mean_bump"] = rep.mean_bump;
  j["ito"] = refinement_json(rep.grid_sizes, rep.ito);
  j["stratonovich"] = refinement_json(rep.grid_sizes, rep.stratonovich);
  write_file_atomic(fs::path(cfg.out) / "ito_check.json", dump(j));
  out << "ito-check " << rep.functional << ": rms";
  for (double r : rep.ito.rms)
    out << " " << format_double(r);
  out << (rep.ito.decays() ? " (decays)" : " (no decay)") << "\n";
  return rep.ito.decays() ? 0 : 5;
}

int cmd_hijab(const RunConfig &cfg, std::ostream &out) {
  const Model model = load_model(cfg);
  if (!std::holds_alternative<AnalyticModel>(model))
    throw UsageError("hijab-check needs an analytic model");
  const RefinementConfig rc = refinement_config(cfg);
  const HijabReport rep = hijab_decomposition_check(std::get<AnalyticModel>(model), rc);
  json j;
  j["command"] = "hijab-check";
  j["model"] = *cfg.model;
  j["config"] = config_json(rc);
  j["stratonovich_pair"] = refinement_json(rep.grid_sizes, rep.stratonovich);
  j["ito_pair"] = refinement_json(rep.grid_sizes, rep.ito);
  write_file_atomic(fs::path(cfg.out) / "hijab_check.json", dump(j));
  const bool ok = rep.ito.decays() && rep.stratonovich.decays();
  out << "hijab-check: ito rms";
  for (double r : rep.ito.rms)
    out << " " << format_double(r);
  out << ", stratonovich rms";
  for (double r : rep.stratonovich.rms)
    out << " " << format_double(r);
  out << (ok ? " (decays)" : " (no decay)") << "\n";
  return ok ? 0 : 5;
}

int cmd_demo_zakai(const RunConfig &cfg, std::ostream &out) {
  const std::uint64_t seed = require_seed(cfg);
  const auto gen = parse_matrix(cfg.generator.value_or("-1,1;1,-1"), "--generator");
  const std::size_t d = gen.rows();
  const auto h = parse_list(cfg.observation.value_or(d == 2 ? "0,1" : ""), "--obs-values");
  std::vector<Rational> init;
  if (cfg.init)
    init = parse_list(*cfg.init, "--init");
  else
    init.assign(d, Rational(1, static_cast<long>(d)));
  const std::vector<Rational> ones(d, Rational(1));
  std::vector<Rational> indicator(d, Rational(0));
  indicator[d - 1] = 1;
  const BilinearModel model = zakai_build(gen, h, ones, init);
  const double T = cfg.horizon.value_or(1.0);
  const std::size_t J = cfg.grid.value_or(4096);
  const std::size_t reps = cfg.reps.value_or(200);
  const int deg = cfg.degree.value_or(6);
  const auto grid = uniform_grid(T, J);

  struct Rep {
    std::size_t violations = 0;
    double pi_min = INFINITY, pi_max = -INFINITY, one_dev = 0, sigma_min = INFINITY;
    std::string csv;
  };
  std::vector<Rep> runs(reps);
  parallel_for(reps, [&](std::size_t r) {
    const SamplePath path = sample_brownian(QSpec::identity(1), grid, replicate_seed(seed, r));
    const Trajectory tr = simulate_bilinear(model, path);
    Rep &rep = runs[r];
    std::vector<double> s1(J + 1), sphi(J + 1);
    for (std::size_t j = 0; j <= J; ++j) {
      const auto row = tr.states.row(static_cast<Eigen::Index>(j));
      s1[j] = row.sum();
      sphi[j] = row[static_cast<Eigen::Index>(d - 1)];
      rep.sigma_min = std::min(rep.sigma_min, s1[j]);
      if (!(s1[j] > 0))
        ++rep.violations;
    }
    if (rep.violations)
      return;
    const auto pi = normalize_filter(sphi, s1);
    const auto pi_one = normalize_filter(s1, s1);
    for (std::size_t j = 0; j <= J; ++j) {
      rep.pi_min = std::min(rep.pi_min, pi[j]);
      rep.pi_max = std::max(rep.pi_max, pi[j]);
      rep.one_dev = std::max(rep.one_dev, std::abs(pi_one[j] - 1.0));
    }
    if (r == 0) {
      std::ostringstream os;
      os << "t,W1,sigma_one,sigma_phi,pi_phi\n";
      for (std::size_t j = 0; j <= J; ++j)
        os << csv_number(grid[j]) << "," << csv_number(path.values(static_cast<Eigen::Index>(j), 0)) << ","
           << csv_number(s1[j]) << "," << csv_number(sphi[j]) << "," << csv_number(pi[j]) << "\n";
      rep.csv = os.str();
    }
  });
  std::size_t violations = 0;
  double pi_min = INFINITY, pi_max = -INFINITY, one_dev = 0, sigma_min = INFINITY;
  for (const auto &r : runs) {
    violations += r.violations;
    pi_min = std::min(pi_min, r.pi_min);
    pi_max = std::max(pi_max, r.pi_max);
    one_dev = std::max(one_dev, r.one_dev);
    sigma_min = std::min(sigma_min, r.sigma_min);
  }
  const Series s = bilinear_coefficients(model, deg);
  const RankReport rank = rank_exact(hankel_build(s, deg / 2, deg - deg / 2));
  std::ostringstream model_text;
  write_model(model_text, model);
  write_file_atomic(fs::path(cfg.out) / "zakai.model", model_text.str());
  if (!runs.empty() && !runs[0].csv.empty())
    write_file_atomic(fs::path(cfg.out) / "zakai_trajectory_rep0.csv", runs[0].csv);
  json j;
  j["command"] = "demo-zakai";
  j["states"] = d;
  j["horizon"] = T;
  j["grid"] = J;
  j["replicates"] = reps;
  j["seed"] = seed;
  j["positivity_violations"] = violations;
  j["min_sigma_one"] = sigma_min;
  j["pi_indicator_min"] = pi_min;
  j["pi_indicator_max"] = pi_max;
  j["pi_one_max_deviation"] = one_dev;
  j["hankel"] = rank_json(rank);
  j["hankel_rank_bound"] = d;
  write_file_atomic(fs::path(cfg.out) / "zakai_summary.json", dump(j));
  out << "demo-zakai: " << violations << " positivity violations, pi in [" << format_double(pi_min) << ", "
      << format_double(pi_max) << "], " << describe(rank) << "\n";
  return violations == 0 && rank.rank <= d ? 0 : 6;
}

} // namespace

int run_command(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  try {
    const std::string &c = cfg.command;
    if (c == "coeffs")
      return cmd_coeffs(cfg, out);
    if (c == "rank")
      return cmd_rank(cfg, out, true, true);
    if (c == "lierank")
      return cmd_rank(cfg, out, false, true);
    if (c == "realize")
      return cmd_realize(cfg, out, err);
    if (c == "simulate")
      return cmd_simulate_or_compare(cfg, out, false);
    if (c == "compare")
      return cmd_simulate_or_compare(cfg, out, true);
    if (c == "ito-check")
      return cmd_ito_check(cfg, out);
    if (c == "hijab-check")
      return cmd_hijab(cfg, out);
    if (c == "demo-zakai")
      return cmd_demo_zakai(cfg, out);
    throw UsageError("unknown command '" + c + "'");
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InsufficientDegree &e) {
    const std::string what = e.what();
    err << "error: " << (what.rfind("insufficient degree", 0) == 0 ? "" : "insufficient degree: ") << what << "\n";
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace cfreal::cli
