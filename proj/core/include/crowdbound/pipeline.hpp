#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crowdbound/linalg.hpp"
#include "crowdbound/rscore.hpp"

namespace crowdbound {

/// One group answering one task: the unit of the empirical pipeline.
struct TrialRecord {
  std::string dataset_id;
  std::string task_id;
  std::string group_id;
  bool social = false;  // did the group interact before revising
  double truth = 0.0;
  std::vector<double> initial_estimates;
  std::vector<double> revised_estimates;  // same length, same subject order
};

struct LoadResult {
  std::vector<TrialRecord> trials;
  std::size_t dropped_rows = 0;  // subjects removed for nonpositive estimates
};

/// Reads the canonical trial CSV (header dataset_id,task_id,group_id,
/// subject_id,social,truth,initial_estimate,revised_estimate; one row per
/// subject). Rows with nonpositive estimates are dropped and counted.
LoadResult load_trials(const std::filesystem::path& path);

/// Writes trials back out in the canonical schema, one synthetic subject id
/// per row. load_trials(save_trials(t)) reproduces t exactly.
void save_trials(std::span<const TrialRecord> trials, const std::filesystem::path& path);

struct TrialOutcome {
  bool improved = false;             // revised strictly closer to the truth
  double z_abs_error_revised = 0.0;  // filled by zscore_by_task
  double abs_error_initial = 0.0;
  double abs_error_revised = 0.0;
};

/// Collective initial/revised estimates are the within-group means; errors
/// are absolute distances to the truth. Ties are not improvements.
TrialOutcome trial_outcome(const TrialRecord& trial);

/// Standardizes abs_error_revised within each task (sample sd). Every task
/// needs at least two trials and nonzero error variance.
void zscore_by_task(std::span<const std::string> task_ids, std::span<TrialOutcome> outcomes);

struct RegressionResult {
  std::vector<std::string> names;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> wald_stats;  // coefficient / std error (z or t)
  std::vector<double> p_values;    // two-tailed
  std::vector<double> covariance;  // p x p row-major
  std::size_t n_obs = 0;
  bool converged = false;
};

/// Logistic maximum likelihood via iteratively reweighted least squares.
/// Wald z uses the inverse observed information; p-values are two-tailed
/// normal. Diverging coefficients (|beta| > 30) raise SeparationError.
RegressionResult fit_logistic(const std::vector<bool>& y, const Matrix& x,
                              std::span<const std::string> names = {});

/// Ordinary least squares via Householder QR; t statistics on n - p degrees
/// of freedom.
RegressionResult fit_ols(std::span<const double> y, const Matrix& x,
                         std::span<const std::string> names = {});

struct TaskSummary {
  std::string task_id;
  RScore r;  // pooled over all initial estimates of the task's trials
  std::size_t n_trials = 0;
};

struct MarginalEffectPoint {
  double r = 0.0;
  double effect = 0.0;  // fitted social-minus-nonsocial z error at this r
  double std_error = 0.0;
};

struct ReportMeta {
  std::optional<std::uint64_t> seed;
  std::size_t dropped_rows = 0;
};

struct AnalysisReport {
  RegressionResult logistic;  // improved ~ 1 + R, social trials only
  RegressionResult ols;       // z error ~ 1 + R + I + I*R, all trials
  std::vector<TaskSummary> tasks;
  std::vector<MarginalEffectPoint> marginal_effect;
  double crossover_r = 0.0;  // where the fitted effect changes sign
  std::size_t n_trials = 0;
  std::size_t n_social = 0;
  std::size_t n_nonsocial = 0;
  ReportMeta meta;
};

/// Full pipeline: per-task R, per-trial outcomes, z-scoring, and the two
/// regressions. Needs at least one social and one non-social trial.
AnalysisReport analyze(std::span<const TrialRecord> trials, ReportMeta meta = {});

/// Report JSON with top-level keys logistic, ols, tasks, meta (plus
/// marginal_effect); numbers keep full round-trip precision.
std::string report_to_json(const AnalysisReport& report);

/// Fixed-width coefficient table for terminal output.
std::string coefficient_table(const AnalysisReport& report);

struct SynthConfig {
  std::size_t n_tasks = 20;
  std::size_t groups_per_task = 10;
  std::size_t group_size = 30;
  double sigma_lo = 0.1;
  double sigma_hi = 2.5;
  double theta = 100.0;
  double omega_social = 0.4;
  std::uint64_t seed = 4;
};

/// Synthetic trial generator. Each task draws a dispersion and a bias;
/// tasks alternate between heavy-tailed (log-normal) and thin-tailed
/// (positive normal) estimation contexts so per-task R spans both sides of
/// 0.5. Social groups move a fixed convex step toward the omega-weighted
/// collective estimate; non-social groups keep their initial estimates.
/// Deterministic in the seed; three of every five groups are social.
std::vector<TrialRecord> generate_synthetic(const SynthConfig& config);

}  // namespace crowdbound
