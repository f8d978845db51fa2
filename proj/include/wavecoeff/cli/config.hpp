#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavecoeff/errors.hpp"

namespace wavecoeff::cli {

/// Bad configuration; line is 0 when no single line is to blame.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

enum class Mode { single, sweep, geometry };
enum class Timings { wall, none };

/// A value that may be left to suggest_parameters.
struct AutoValue {
  std::optional<double> value;  // empty means auto
};

/// One row of a sweep. Unset fields inherit from the main sections.
struct SweepCase {
  std::string name;
  std::optional<std::string> window;
  std::optional<double> delta0;
  std::optional<AutoValue> K;
  std::optional<AutoValue> alpha;
  std::optional<AutoValue> epsilon;
  std::optional<std::string> p_true;
  std::optional<std::uint64_t> seed;
};

struct ExperimentConfig {
  Mode mode = Mode::single;

  // [problem]
  int n_cells = 100;
  int n_steps = 100;
  double t_max = 1.0;
  std::string source = "paper";
  std::string initial_value = "one";
  std::string p_true = "paper_a";

  // [observation]
  std::string window = "complement:0.1,0.9";
  double delta0 = 0.01;
  std::uint64_t seed = 1;

  // [iteration]
  AutoValue K{2e-5};
  AutoValue alpha{1e-7};
  AutoValue epsilon{};
  int max_iter = 500;
  std::string initial_guess = "one";
  std::optional<double> boundary_left;   // empty: p_true at x = 0
  std::optional<double> boundary_right;  // empty: p_true at x = 1
  double kappa1 = 0.1;
  double M1 = 10.0;
  bool clamp = true;

  // [diagnostics]
  int surrogate_samples = 20;

  // [geometry]
  std::string weight = "canonical";
  double x0 = -0.1;
  double beta = 0.9;
  double lambda = 1.0;
  double level = 0.005;
  std::optional<double> geometry_t_max;      // empty: problem T
  std::optional<std::string> geometry_window;  // empty: observation window

  // [output]
  std::string out_dir = "out";
  Timings timings = Timings::wall;

  std::vector<SweepCase> cases;
};

/// Applies the sections of an INI document on top of `base`.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

/// Named experiment setups: table1a, table1b, table1c, table2.
ExperimentConfig preset(const std::string& name);

/// INI text that parse_config reads back to the same configuration.
std::string render_config(const ExperimentConfig& cfg);

std::string to_string(Mode m);

}  // namespace wavecoeff::cli
