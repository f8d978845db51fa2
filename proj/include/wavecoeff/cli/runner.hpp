#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wavecoeff/cli/config.hpp"

namespace wavecoeff::cli {

enum class CaseStatus { converged, max_iter, error };

std::string to_string(CaseStatus s);

/// What one reconstruction produced, as reported in summaries and sweep rows.
struct CaseOutcome {
  CaseStatus status = CaseStatus::error;
  std::string omega_spec;
  double delta0 = 0.0;
  double K = 0.0;
  double alpha = 0.0;
  double epsilon = 0.0;
  int iterations = 0;
  double rel_error = 0.0;  // NaN on error
  double elapsed = 0.0;
  std::string message;  // error text
};

/// Exit codes.
inline constexpr int kExitConverged = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitMaxIter = 2;

/// Writes history.csv, profile.csv and summary.txt under cfg.out_dir.
int run_single(const ExperimentConfig& cfg, std::ostream& log);

/// Runs every case into its own subdirectory and writes sweep.csv and
/// summary.txt under cfg.out_dir.
int run_sweep(const ExperimentConfig& cfg, std::ostream& log);

/// Writes geometry.txt and geometry.csv under cfg.out_dir.
int run_geometry(const ExperimentConfig& cfg, std::ostream& log);

int run(const ExperimentConfig& cfg, std::ostream& log);

/// Command-line entry point: reconstruct [config] [--mode M] [--preset P]
/// [--seed N] [--out DIR].
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Threads used by run_sweep: WAVECOEFF_THREADS if set and positive, else
/// the OpenMP default.
int sweep_threads();

}  // namespace wavecoeff::cli
