#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lrtherm/bounds.hpp"
#include "lrtherm/lattice.hpp"

namespace lrtherm::harness {

enum class Experiment { clustering, mutual_info, negativity, tfd, bounds, oracle_check };
enum class Model { bilinear, heisenberg };

std::string to_string(Experiment e);
std::string to_string(Model m);
std::string to_string(lattice::Metric m);
std::string to_string(bounds::UVariant v);

struct ExperimentConfig {
  Experiment kind = Experiment::mutual_info;
  Model model = Model::bilinear;
  int dim = 1;
  lattice::Metric metric = lattice::Metric::manhattan;
  bounds::UVariant u_variant = bounds::UVariant::lemma;
  std::vector<double> alphas = {1.0};
  std::vector<int> sizes = {};        // chain lengths or square side lengths
  double beta = 2.0;
  int samples = 1;
  std::uint64_t seed = 1;
  double scale = 1.0;
  int workers = 0;                    // 0 = all available
  double amplitude_lo = 0.0;
  double amplitude_hi = 1.0;
  std::string preset;                 // empty or fig2a/fig2b/fig2c/fig2d/fig4a/fig4b/figS5
  std::string out = "results.csv";
  // bound constants (bounds experiment)
  double g = 1.0;
  double c_const = 1.0;
  int k_local = 2;
  int d0 = 2;
  // provenance of a consumed preset/scale, echoed as a comment
  std::string resolved_from;

  // Applies the preset parameters and the scale factor (both consumed, so a
  // resolved config re-runs verbatim); validates everything and estimates
  // capacity before any computation starts.
  void resolve();
};

struct ExperimentRow {
  std::string experiment;
  double alpha = 0.0;
  int n = 0;
  int samples = 0;
  std::string observable;
  double x = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double seconds = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;  // resolved
  std::vector<ExperimentRow> rows;
};

// Runs the configured experiment. Deterministic for a fixed seed, independent
// of the worker count (the seconds column aside).
ExperimentResult run_experiment(ExperimentConfig cfg);

// CSV contract: fixed header, 17 significant digits, LF line endings, rows
// sorted by (alpha, x, observable).
std::string csv_header();
std::string format_csv(const std::vector<ExperimentRow>& rows);
void emit_csv(const std::vector<ExperimentRow>& rows, const std::string& path);

// Flat `key = value` echo of the resolved config, written next to the CSV.
std::string format_config(const ExperimentConfig& cfg);
void write_config_echo(const ExperimentConfig& cfg, const std::string& path);

// Reads the same flat format back into key/value pairs (# starts a comment).
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// Drops the seconds column; what determinism comparisons hash.
std::string strip_seconds_column(const std::string& csv);

// Convenience: run, write CSV + config echo.
ExperimentResult run_and_write(ExperimentConfig cfg);

}  // namespace lrtherm::harness
