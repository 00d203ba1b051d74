#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqsamp/metrics.hpp"
#include "eqsamp/sampling.hpp"
#include "eqsamp/sensing.hpp"
#include "eqsamp/signal_model.hpp"
#include "eqsamp/solver.hpp"

namespace eqsamp {

enum class EesPrior { Template, Scene };

/// Everything a sweep needs; defaults reproduce the headline experiment.
struct ExperimentConfig {
  int n = 256;
  double center_frequency = 2e9;
  double sample_rate = 32e9;
  int band_lo = 0;  // 0 = auto: first positive bin
  int band_hi = 0;  // 0 = auto: last bin below Nyquist
  std::vector<int> dof_list = {1, 3};
  std::vector<int> sample_counts = {6, 8, 10, 14, 18, 24, 32};
  int trials = 7;
  std::uint64_t base_seed = 1;
  std::vector<Scheme> schemes = {Scheme::Fes, Scheme::Random, Scheme::Ees};
  double amplitude_lo = 0.3;
  double amplitude_hi = 1.0;
  int guard = 0;  // 0 = auto: template effective support
  double feasibility_tolerance = 1e-6;
  int max_iterations = 20000;
  double shrink_scale = 0.1;
  EesPrior ees_prior = EesPrior::Template;
  MidpointRule midpoint = MidpointRule::Energy;
  std::string out_dir = "out";
  int jobs = 1;
  bool plot_trials = false;
  bool timings = false;

  Band resolved_band() const;
};

/// One (scheme, dof, sample count, trial) outcome.
struct TrialRecord {
  Scheme scheme = Scheme::Fes;
  int dof = 0;
  int sample_count = 0;
  std::uint64_t seed = 0;  // scene seed, shared by all schemes in the cell
  double psnr_db = 0;
  double spectrum_l2_error = 0;
  int solver_iterations = 0;
  bool converged = false;
  double wall_time = 0;  // seconds
};

/// Mean/median PSNR per (scheme, dof, sample_count) cell.
struct CellSummary {
  Scheme scheme = Scheme::Fes;
  int dof = 0;
  int sample_count = 0;
  int trials = 0;
  double mean_psnr_db = 0;
  double median_psnr_db = 0;
  double mean_spectrum_l2_error = 0;
  int converged_count = 0;
};

struct SweepResult {
  std::vector<TrialRecord> records;
  std::vector<CellSummary> summary;
};

/// Immutable per-experiment context shared by all trials.
struct ExperimentContext {
  MonocycleTemplate<double> tmpl;
  Dictionary<double> dictionary;
  Band band;
  EnergyProfile<double> template_profile;  // per-m target filled per plan
  int guard = 0;
};

ExperimentContext make_context(const ExperimentConfig& config);

std::uint64_t scene_seed(const ExperimentConfig& config, int dof, int m, int trial);

TrialRecord run_trial(const ExperimentConfig& config, const ExperimentContext& ctx, Scheme scheme,
                      int dof, int sample_count, int trial);

/// Builds the plan a given trial would use (RANDOM plans are per-trial).
SamplingPlan trial_plan(const ExperimentConfig& config, const ExperimentContext& ctx, Scheme scheme,
                        int dof, int sample_count, int trial);

SweepResult run_sweep(const ExperimentConfig& config);

/// Writes records.csv, summary.csv and the per-DoF PSNR charts (plus
/// per-trial overlays when plot_trials is set). Returns the file names.
std::vector<std::string> emit_outputs(const SweepResult& result, const ExperimentConfig& config);

std::string records_csv(const std::vector<TrialRecord>& records, bool timings);
std::string summary_csv(const std::vector<CellSummary>& summary);

/// Key=value config file; unknown keys are an error.
ExperimentConfig load_config(const std::string& path);
void apply_config_line(ExperimentConfig& config, const std::string& key, const std::string& value);

}  // namespace eqsamp
