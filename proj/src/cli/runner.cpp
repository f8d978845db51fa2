#include "wavecoeff/cli/runner.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "wavecoeff/carleman.hpp"
#include "wavecoeff/cli/descriptors.hpp"
#include "wavecoeff/objective.hpp"
#include "wavecoeff/reconstruct.hpp"
#include "wavecoeff/synth.hpp"

namespace wavecoeff::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double v) { return std::isnan(v) ? "NaN" : format_number(v); }

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

struct Setup {
  Grid1D grid;
  TimeGrid tgrid;
  ForwardModel model;
  SpatialField p_true;
  ObservationWindow window;
};

Setup build_setup(const ExperimentConfig& cfg) {
  const Grid1D grid(0.0, 1.0, cfg.n_cells);
  const TimeGrid tgrid(cfg.t_max, cfg.n_steps);
  const auto f = parse_source(cfg.source);
  const auto u0 = parse_profile(cfg.initial_value);
  ForwardModel model{SpaceTimeField::sample(grid, tgrid, f), SpatialField::sample(grid, u0)};
  auto p_true = SpatialField::sample(grid, parse_profile(cfg.p_true));
  return {grid, tgrid, std::move(model), std::move(p_true), ObservationWindow::parse(cfg.window)};
}

/// Fills every "auto" with its concrete value.
ExperimentConfig resolve(ExperimentConfig cfg, const Setup& s) {
  const auto sp = suggest_parameters(s.window, cfg.delta0);
  if (!cfg.K.value) cfg.K.value = sp.K;
  if (!cfg.alpha.value) cfg.alpha.value = sp.alpha;
  if (!cfg.epsilon.value) cfg.epsilon.value = sp.epsilon;
  if (!cfg.boundary_left) cfg.boundary_left = s.p_true.values.front();
  if (!cfg.boundary_right) cfg.boundary_right = s.p_true.values.back();
  return cfg;
}

void write_history(const fs::path& path, const ReconstructionResult& r) {
  auto out = open_output(path);
  out << "iter,step_ratio,J,misfit,err\n";
  for (const auto& rec : r.history)
    out << rec.iter << ',' << num(rec.step_ratio) << ',' << num(rec.J) << ',' << num(rec.misfit)
        << ',' << num(rec.err) << '\n';
}

void write_profile(const fs::path& path, const SpatialField& p_true, const SpatialField& p_final) {
  auto out = open_output(path);
  out << "x,p_true,p_final\n";
  for (int i = 0; i < p_true.grid.n_nodes(); ++i)
    out << num(p_true.grid.node(i)) << ',' << num(p_true[i]) << ',' << num(p_final[i]) << '\n';
}

struct SingleRun {
  CaseOutcome outcome;
  ExperimentConfig effective;
};

SingleRun execute_single(const ExperimentConfig& requested) {
  SingleRun run{{}, requested};
  auto& o = run.outcome;
  o.omega_spec = requested.window;
  o.delta0 = requested.delta0;
  o.rel_error = kNaN;
  o.K = o.alpha = o.epsilon = kNaN;
  try {
    const auto setup = build_setup(requested);
    run.effective = resolve(requested, setup);
    const auto& cfg = run.effective;
    o.K = *cfg.K.value;
    o.alpha = *cfg.alpha.value;
    o.epsilon = *cfg.epsilon.value;

    CoefficientSpec spec{*cfg.boundary_left, *cfg.boundary_right, cfg.kappa1, cfg.M1, cfg.clamp};
    IterationConfig icfg{o.K, o.alpha, o.epsilon, cfg.max_iter, cfg.seed};
    const auto obs = make_observation(setup.model, setup.p_true, setup.window, cfg.delta0, cfg.seed);
    RunOptions opts;
    opts.initial_guess = SpatialField::sample(setup.grid, parse_profile(cfg.initial_guess));
    opts.p_true = setup.p_true;
    const auto result = run_reconstruction(setup.model, setup.window, obs.noisy, spec, icfg, opts);

    o.status = result.converged ? CaseStatus::converged : CaseStatus::max_iter;
    o.iterations = result.iterations;
    o.rel_error = result.rel_error;
    o.elapsed = result.elapsed_seconds;

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    write_history(dir / "history.csv", result);
    write_profile(dir / "profile.csv", setup.p_true, result.p_final);

    std::ostringstream head;
    head << "# status = " << to_string(o.status) << "\n"
         << "# N = " << o.iterations << "\n"
         << "# err = " << num(o.rel_error) << "\n";
    if (cfg.timings == Timings::wall) head << "# elapsed = " << num(o.elapsed) << "\n";
    head << "# delta = " << num(obs.delta) << "\n";
    if (!result.history.empty()) {
      const auto& last = result.history.back();
      head << "# final_step_ratio = " << num(last.step_ratio) << "\n"
           << "# final_J = " << num(last.J) << "\n"
           << "# h1_norm = " << num(last.h1_norm) << " (M1 = " << num(cfg.M1) << ")\n";
      bool clamped = false;
      for (const auto& rec : result.history) clamped = clamped || rec.clamped;
      head << "# clamp_activated = " << (clamped ? "true" : "false") << "\n";
    }
    if (cfg.surrogate_samples > 0) {
      SurrogateSamplingOptions so;
      so.n_samples = cfg.surrogate_samples;
      so.seed = cfg.seed;
      so.boundary_left = spec.boundary_left;
      so.boundary_right = spec.boundary_right;
      so.kappa1 = spec.kappa1;
      const auto samples =
          sample_surrogate(setup.model, obs.noisy, o.K, {o.alpha, setup.window}, so);
      int holds = 0, negative = 0;
      for (const auto& s : samples) {
        holds += s.condition_holds;
        negative += s.condition_holds && s.surrogate < 0.0;
      }
      head << "# empirical_K = " << num(empirical_K(samples)) << " (configured K = " << num(o.K)
           << ", condition holds on " << holds << " of " << samples.size()
           << " pairs, negative surrogate on " << negative << ")\n";
    }
    auto out = open_output(dir / "summary.txt");
    out << head.str() << "\n" << render_config(cfg);
  } catch (const std::exception& e) {
    o.status = CaseStatus::error;
    o.message = e.what();
  }
  return run;
}

int exit_code(CaseStatus s) {
  switch (s) {
    case CaseStatus::converged: return kExitConverged;
    case CaseStatus::max_iter: return kExitMaxIter;
    case CaseStatus::error: return kExitFailure;
  }
  return kExitFailure;
}

ExperimentConfig case_config(const ExperimentConfig& base, const SweepCase& sc,
                             const fs::path& dir) {
  ExperimentConfig c = base;
  c.mode = Mode::single;
  c.cases.clear();
  c.out_dir = dir.string();
  if (sc.window) c.window = *sc.window;
  if (sc.delta0) c.delta0 = *sc.delta0;
  if (sc.K) c.K = *sc.K;
  if (sc.alpha) c.alpha = *sc.alpha;
  if (sc.epsilon) c.epsilon = *sc.epsilon;
  if (sc.p_true) c.p_true = *sc.p_true;
  if (sc.seed) c.seed = *sc.seed;
  return c;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::converged: return "converged";
    case CaseStatus::max_iter: return "max_iter";
    case CaseStatus::error: return "error";
  }
  return "error";
}

int sweep_threads() {
  if (const char* env = std::getenv("WAVECOEFF_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return omp_get_max_threads();
}

int run_single(const ExperimentConfig& cfg, std::ostream& log) {
  const auto run = execute_single(cfg);
  const auto& o = run.outcome;
  if (o.status == CaseStatus::error) {
    log << "error: " << o.message << "\n";
    return kExitFailure;
  }
  log << to_string(o.status) << ": N = " << o.iterations << ", err = " << num(o.rel_error);
  if (cfg.timings == Timings::wall) log << ", elapsed = " << num(o.elapsed) << " s";
  log << "\n";
  return exit_code(o.status);
}

int run_sweep(const ExperimentConfig& cfg, std::ostream& log) {
  if (cfg.cases.empty()) throw ConfigError("sweep mode needs at least one [case] section");
  const fs::path root(cfg.out_dir);
  fs::create_directories(root);

  const int n = static_cast<int>(cfg.cases.size());
  std::vector<SingleRun> runs(n);
  std::vector<ExperimentConfig> requested;
  for (int i = 0; i < n; ++i)
    requested.push_back(case_config(cfg, cfg.cases[i], root / ("case_" + std::to_string(i + 1))));

  const int threads = std::max(1, std::min(sweep_threads(), n));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int i = 0; i < n; ++i) runs[i] = execute_single(requested[i]);

  auto out = open_output(root / "sweep.csv");
  out << "omega_spec,delta0,K,alpha,N,err,elapsed,status\n";
  int code = kExitConverged;
  ExperimentConfig echoed = cfg;
  for (int i = 0; i < n; ++i) {
    const auto& o = runs[i].outcome;
    out << csv_quote(o.omega_spec) << ',' << num(o.delta0) << ',' << num(o.K) << ','
        << num(o.alpha) << ',' << o.iterations << ',' << num(o.rel_error) << ','
        << (cfg.timings == Timings::wall ? num(o.elapsed) : "NA") << ',' << to_string(o.status)
        << '\n';
    log << "case " << i + 1 << (cfg.cases[i].name.empty() ? "" : " (" + cfg.cases[i].name + ")")
        << ": " << to_string(o.status);
    if (o.status == CaseStatus::error)
      log << ": " << o.message;
    else
      log << ", N = " << o.iterations << ", err = " << num(o.rel_error);
    log << "\n";
    if (o.status == CaseStatus::error)
      code = kExitFailure;
    else if (o.status == CaseStatus::max_iter && code == kExitConverged)
      code = kExitMaxIter;

    auto& sc = echoed.cases[i];
    const auto& eff = runs[i].effective;
    if (o.status != CaseStatus::error) {
      sc.K = eff.K;
      sc.alpha = eff.alpha;
      sc.epsilon = eff.epsilon;
    }
  }
  auto summary = open_output(root / "summary.txt");
  summary << "# cases = " << n << "\n\n" << render_config(echoed);
  return code;
}

int run_geometry(const ExperimentConfig& cfg, std::ostream& log) {
  const Grid1D grid(0.0, 1.0, cfg.n_cells);
  CarlemanWeights w;
  if (cfg.weight == "canonical")
    w.d = SquaredDistance{cfg.x0, grid.x_min(), grid.x_max()};
  else
    w.d = SpatialField::sample(grid, parse_profile(cfg.weight));
  w.beta = cfg.beta;
  w.lambda = cfg.lambda;
  w.delta = cfg.level;
  const double T = cfg.geometry_t_max.value_or(cfg.t_max);
  const auto window = ObservationWindow::parse(cfg.geometry_window.value_or(cfg.window));
  const auto u0 = SpatialField::sample(grid, parse_profile(cfg.initial_value));
  const auto r = check_observation_geometry(w, window, T, &u0);

  struct Row {
    std::string name;
    bool holds;
    std::string detail;
  };
  std::vector<Row> rows;
  rows.push_back({"time_condition", r.time_condition,
                  "T^2 = " + num(T * T) + ", max d = " + num(r.max_d) +
                      ", minimal T = " + num(r.minimal_T)});
  rows.push_back({"boundary_coverage", r.boundary_coverage,
                  "left " + std::string(r.covers_left ? "covered" : "not covered") + ", right " +
                      (r.covers_right ? "covered" : "not covered")});
  rows.push_back({"level_set_containment", r.level_set_containment,
                  "Omega(" + num(cfg.level) + ") = " + format_intervals(r.level_set)});
  rows.push_back({"beta_range", r.beta_admissible,
                  (r.beta_range ? format_intervals({*r.beta_range}) : std::string("empty")) +
                      ", beta = " + num(cfg.beta)});
  rows.push_back({"nonvanishing", r.min_nonvanishing && *r.min_nonvanishing > 0.0,
                  "min |u0' d'| = " + num(r.min_nonvanishing.value_or(kNaN))});
  rows.push_back({"all", r.all_hold(), "time_condition, boundary_coverage, level_set_containment"});

  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  auto csv = open_output(dir / "geometry.csv");
  csv << "condition,holds,detail\n";
  for (const auto& row : rows) csv << row.name << ',' << yes_no(row.holds) << ',' << csv_quote(row.detail) << '\n';

  auto txt = open_output(dir / "geometry.txt");
  txt << "Observation geometry\n"
      << "  weight d: "
      << (cfg.weight == "canonical" ? "(x - " + num(cfg.x0) + ")^2" : cfg.weight) << "\n"
      << "  window: " << window.describe() << "\n"
      << "  T = " << num(T) << ", beta = " << num(cfg.beta) << ", lambda = " << num(cfg.lambda)
      << ", delta = " << num(cfg.level) << "\n"
      << "  d ranges over [" << num(r.min_d) << ", " << num(r.max_d) << "]\n\n";
  for (const auto& row : rows)
    txt << "  " << (row.holds ? "[holds]  " : "[fails]  ") << row.name << ": " << row.detail << "\n";
  if (!r.time_condition)
    txt << "\nThe time condition needs T > " << num(r.minimal_T) << ".\n";
  txt << "\n" << render_config(cfg);

  log << "geometry: " << (r.all_hold() ? "all conditions hold" : "some conditions fail")
      << " (see " << (dir / "geometry.txt").string() << ")\n";
  return kExitConverged;
}

int run(const ExperimentConfig& cfg, std::ostream& log) {
  switch (cfg.mode) {
    case Mode::single: return run_single(cfg, log);
    case Mode::sweep: return run_sweep(cfg, log);
    case Mode::geometry: return run_geometry(cfg, log);
  }
  return kExitFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reconstruct a wave-equation coefficient from interior observations"};
  std::string config_path, mode, preset_name, out_dir;
  std::uint64_t seed = 0;
  app.add_option("config", config_path, "Experiment config file (INI)");
  app.add_option("--mode", mode, "single, sweep or geometry")
      ->check(CLI::IsMember({"single", "sweep", "geometry"}));
  app.add_option("--preset", preset_name, "table1a, table1b, table1c or table2")
      ->check(CLI::IsMember({"table1a", "table1b", "table1c", "table2"}));
  auto* seed_opt = app.add_option("--seed", seed, "Noise seed");
  app.add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitConverged : kExitFailure;
  }

  try {
    if (config_path.empty() && preset_name.empty())
      throw ConfigError("give a config file or --preset");
    ExperimentConfig cfg = preset_name.empty() ? ExperimentConfig{} : preset(preset_name);
    if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
    if (!mode.empty()) cfg.mode = mode == "sweep" ? Mode::sweep
                                  : mode == "geometry" ? Mode::geometry
                                                       : Mode::single;
    if (*seed_opt) cfg.seed = seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    return run(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace wavecoeff::cli
