#include "crowdbound/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "crowdbound/distributions.hpp"
#include "crowdbound/errors.hpp"
#include "crowdbound/influence.hpp"
#include "crowdbound/rng.hpp"

namespace crowdbound {

namespace {

constexpr const char* kTrialHeader =
    "dataset_id,task_id,group_id,subject_id,social,truth,initial_estimate,revised_estimate";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& field, std::size_t line_no, const char* what) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [next, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || next != end) {
    throw ParseError(line_no, std::string("malformed ") + what + " '" + field + "'");
  }
  return value;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double normal_p_two_tailed(double z) { return std::erfc(std::abs(z) / std::numbers::sqrt2); }

double student_t_p_two_tailed(double t, double dof) {
  if (!std::isfinite(t)) return std::isnan(t) ? std::numeric_limits<double>::quiet_NaN() : 0.0;
  return regularized_incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
}

std::vector<std::string> coefficient_names(std::span<const std::string> names, std::size_t p) {
  if (!names.empty()) {
    if (names.size() != p) {
      throw DomainError("coefficient name count does not match design columns");
    }
    return {names.begin(), names.end()};
  }
  std::vector<std::string> out(p);
  for (std::size_t j = 0; j < p; ++j) out[j] = "b" + std::to_string(j);
  return out;
}

nlohmann::json regression_to_json(const RegressionResult& fit) {
  nlohmann::json coef = nlohmann::json::object();
  nlohmann::json se = nlohmann::json::object();
  nlohmann::json wald = nlohmann::json::object();
  nlohmann::json pval = nlohmann::json::object();
  for (std::size_t j = 0; j < fit.names.size(); ++j) {
    coef[fit.names[j]] = fit.coefficients[j];
    se[fit.names[j]] = fit.std_errors[j];
    wald[fit.names[j]] = fit.wald_stats[j];
    pval[fit.names[j]] = fit.p_values[j];
  }
  return {{"coefficients", coef}, {"std_errors", se},      {"wald_stats", wald},
          {"p_values", pval},     {"n_obs", fit.n_obs},    {"converged", fit.converged}};
}

}  // namespace

LoadResult load_trials(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open trial file: " + path.string());
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw EmptyInputError("trial file is empty: " + path.string());
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrialHeader) {
    throw ParseError(1, "expected header '" + std::string(kTrialHeader) + "'");
  }

  LoadResult result;
  std::map<std::string, std::size_t> index;  // "dataset\x1ftask\x1fgroup" -> trial slot
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const std::vector<std::string> fields = split_csv_row(line);
    if (fields.size() != 8) {
      throw ParseError(line_no, "expected 8 fields, got " + std::to_string(fields.size()));
    }
    bool social = false;
    if (fields[4] == "1") {
      social = true;
    } else if (fields[4] != "0") {
      throw ParseError(line_no, "social must be 0 or 1, got '" + fields[4] + "'");
    }
    const double truth = parse_double(fields[5], line_no, "truth");
    if (!(truth > 0.0)) {
      throw ParseError(line_no, "truth must be positive");
    }
    const double initial = parse_double(fields[6], line_no, "initial_estimate");
    const double revised = parse_double(fields[7], line_no, "revised_estimate");
    if (initial <= 0.0 || revised <= 0.0) {
      ++result.dropped_rows;
      continue;
    }

    const std::string key = fields[0] + '\x1f' + fields[1] + '\x1f' + fields[2];
    auto [it, inserted] = index.try_emplace(key, result.trials.size());
    if (inserted) {
      TrialRecord record;
      record.dataset_id = fields[0];
      record.task_id = fields[1];
      record.group_id = fields[2];
      record.social = social;
      record.truth = truth;
      result.trials.push_back(std::move(record));
    }
    TrialRecord& record = result.trials[it->second];
    if (record.social != social) {
      throw ParseError(line_no, "social flag differs within trial " + fields[2]);
    }
    if (record.truth != truth) {
      throw ParseError(line_no, "truth differs within trial " + fields[2]);
    }
    record.initial_estimates.push_back(initial);
    record.revised_estimates.push_back(revised);
  }

  if (result.trials.empty()) {
    throw EmptyInputError("trial file contains no usable rows: " + path.string());
  }
  return result;
}

void save_trials(std::span<const TrialRecord> trials, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write trial file: " + path.string());
  }
  out << kTrialHeader << '\n';
  for (const TrialRecord& trial : trials) {
    for (std::size_t s = 0; s < trial.initial_estimates.size(); ++s) {
      out << trial.dataset_id << ',' << trial.task_id << ',' << trial.group_id << ",s_" << s << ','
          << (trial.social ? '1' : '0') << ',' << format_double(trial.truth) << ','
          << format_double(trial.initial_estimates[s]) << ','
          << format_double(trial.revised_estimates[s]) << '\n';
    }
  }
}

TrialOutcome trial_outcome(const TrialRecord& trial) {
  if (trial.initial_estimates.empty() ||
      trial.initial_estimates.size() != trial.revised_estimates.size()) {
    throw DomainError("trial estimates must be nonempty and of equal length");
  }
  const double n = static_cast<double>(trial.initial_estimates.size());
  double initial_sum = 0.0;
  double revised_sum = 0.0;
  for (double v : trial.initial_estimates) initial_sum += v;
  for (double v : trial.revised_estimates) revised_sum += v;

  TrialOutcome outcome;
  outcome.abs_error_initial = std::abs(initial_sum / n - trial.truth);
  outcome.abs_error_revised = std::abs(revised_sum / n - trial.truth);
  outcome.improved = outcome.abs_error_revised < outcome.abs_error_initial;
  outcome.z_abs_error_revised = std::numeric_limits<double>::quiet_NaN();
  return outcome;
}

void zscore_by_task(std::span<const std::string> task_ids, std::span<TrialOutcome> outcomes) {
  if (task_ids.size() != outcomes.size()) {
    throw DomainError("zscore_by_task: task ids and outcomes must align");
  }
  std::map<std::string, std::vector<std::size_t>> by_task;
  for (std::size_t i = 0; i < task_ids.size(); ++i) {
    by_task[task_ids[i]].push_back(i);
  }
  for (const auto& [task, idx] : by_task) {
    if (idx.size() < 2) {
      throw DegenerateTaskError("task '" + task + "' has fewer than two trials");
    }
    double mean = 0.0;
    for (std::size_t i : idx) mean += outcomes[i].abs_error_revised;
    mean /= static_cast<double>(idx.size());
    double ss = 0.0;
    for (std::size_t i : idx) {
      const double d = outcomes[i].abs_error_revised - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(idx.size() - 1));
    if (sd <= 1e-12 * (std::abs(mean) + 1e-300)) {
      throw DegenerateTaskError("task '" + task + "' has zero error variance");
    }
    for (std::size_t i : idx) {
      outcomes[i].z_abs_error_revised = (outcomes[i].abs_error_revised - mean) / sd;
    }
  }
}

RegressionResult fit_logistic(const std::vector<bool>& y, const Matrix& x,
                              std::span<const std::string> names) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != n) {
    throw DomainError("fit_logistic: response length does not match design rows");
  }
  if (p == 0) {
    throw DomainError("fit_logistic: design needs at least an intercept column");
  }
  if (n <= p) {
    throw InsufficientDataError("fit_logistic: needs more observations than coefficients");
  }

  constexpr double kCoefLimit = 30.0;
  constexpr double kTol = 1e-10;
  constexpr int kMaxIter = 100;

  std::vector<double> beta(p, 0.0);
  std::vector<double> mu(n), w(n), work(n);
  Matrix weighted(n, p);

  auto refresh = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      double eta = 0.0;
      for (std::size_t j = 0; j < p; ++j) eta += x(i, j) * beta[j];
      mu[i] = 1.0 / (1.0 + std::exp(-eta));
      w[i] = std::max(mu[i] * (1.0 - mu[i]), 1e-12);
      const double sw = std::sqrt(w[i]);
      for (std::size_t j = 0; j < p; ++j) weighted(i, j) = sw * x(i, j);
      work[i] = ((y[i] ? 1.0 : 0.0) - mu[i]) / sw;
    }
  };

  bool converged = false;
  linalg::LeastSquares step;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    refresh();
    step = linalg::solve_least_squares(weighted, work);
    double max_delta = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      beta[j] += step.beta[j];
      max_delta = std::max(max_delta, std::abs(step.beta[j]));
    }
    for (double b : beta) {
      if (std::abs(b) > kCoefLimit) {
        throw SeparationError(
            "logistic coefficients diverge; the data are perfectly separated");
      }
    }
    if (max_delta < kTol) {
      converged = true;
      break;
    }
  }

  // Observed information at the final coefficients.
  refresh();
  step = linalg::solve_least_squares(weighted, work);

  RegressionResult fit;
  fit.names = coefficient_names(names, p);
  fit.coefficients = beta;
  fit.covariance = step.cov;
  fit.n_obs = n;
  fit.converged = converged;
  fit.std_errors.resize(p);
  fit.wald_stats.resize(p);
  fit.p_values.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    fit.std_errors[j] = std::sqrt(step.cov[j * p + j]);
    fit.wald_stats[j] = beta[j] / fit.std_errors[j];
    fit.p_values[j] = normal_p_two_tailed(fit.wald_stats[j]);
  }
  return fit;
}

RegressionResult fit_ols(std::span<const double> y, const Matrix& x,
                         std::span<const std::string> names) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != n) {
    throw DomainError("fit_ols: response length does not match design rows");
  }
  if (p == 0 || n <= p) {
    throw InsufficientDataError("fit_ols: needs more observations than coefficients");
  }

  const linalg::LeastSquares ls = linalg::solve_least_squares(x, y);
  const double dof = static_cast<double>(n - p);
  const double sigma2 = ls.rss / dof;

  RegressionResult fit;
  fit.names = coefficient_names(names, p);
  fit.coefficients = ls.beta;
  fit.n_obs = n;
  fit.converged = true;
  fit.covariance.resize(p * p);
  for (std::size_t k = 0; k < p * p; ++k) fit.covariance[k] = sigma2 * ls.cov[k];
  fit.std_errors.resize(p);
  fit.wald_stats.resize(p);
  fit.p_values.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    fit.std_errors[j] = std::sqrt(fit.covariance[j * p + j]);
    fit.wald_stats[j] = ls.beta[j] / fit.std_errors[j];
    fit.p_values[j] = student_t_p_two_tailed(fit.wald_stats[j], dof);
  }
  return fit;
}

AnalysisReport analyze(std::span<const TrialRecord> trials, ReportMeta meta) {
  if (trials.empty()) {
    throw EmptyInputError("analyze requires at least one trial");
  }

  AnalysisReport report;
  report.meta = meta;
  report.n_trials = trials.size();
  for (const TrialRecord& t : trials) {
    (t.social ? report.n_social : report.n_nonsocial) += 1;
  }
  if (report.n_social == 0 || report.n_nonsocial == 0) {
    throw InsufficientDesignError(
        "analyze needs both social and non-social trials (condition counts: social = " +
        std::to_string(report.n_social) +
        ", non-social = " + std::to_string(report.n_nonsocial) + ")");
  }

  // Pool initial estimates per task, in first-appearance order.
  std::vector<std::string> task_order;
  std::map<std::string, std::vector<double>> pooled;
  std::map<std::string, std::size_t> trial_counts;
  for (const TrialRecord& t : trials) {
    auto [it, inserted] = pooled.try_emplace(t.task_id);
    if (inserted) task_order.push_back(t.task_id);
    it->second.insert(it->second.end(), t.initial_estimates.begin(), t.initial_estimates.end());
    trial_counts[t.task_id] += 1;
  }
  std::map<std::string, double> task_r;
  for (const std::string& task : task_order) {
    TaskSummary summary;
    summary.task_id = task;
    summary.r = r_score(pooled[task]);
    summary.n_trials = trial_counts[task];
    task_r[task] = summary.r.r;
    report.tasks.push_back(std::move(summary));
  }

  std::vector<TrialOutcome> outcomes;
  std::vector<std::string> task_ids;
  outcomes.reserve(trials.size());
  for (const TrialRecord& t : trials) {
    outcomes.push_back(trial_outcome(t));
    task_ids.push_back(t.task_id);
  }
  zscore_by_task(task_ids, outcomes);

  // Improvement model on the social trials only.
  {
    Matrix design(report.n_social, 2);
    std::vector<bool> improved(report.n_social);
    std::size_t row = 0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
      if (!trials[i].social) continue;
      design(row, 0) = 1.0;
      design(row, 1) = task_r[trials[i].task_id];
      improved[row] = outcomes[i].improved;
      ++row;
    }
    const std::string names[] = {"intercept", "R"};
    report.logistic = fit_logistic(improved, design, names);
  }

  // Standardized error model on every trial.
  {
    Matrix design(trials.size(), 4);
    std::vector<double> z(trials.size());
    for (std::size_t i = 0; i < trials.size(); ++i) {
      const double r = task_r[trials[i].task_id];
      const double social = trials[i].social ? 1.0 : 0.0;
      design(i, 0) = 1.0;
      design(i, 1) = r;
      design(i, 2) = social;
      design(i, 3) = social * r;
      z[i] = outcomes[i].z_abs_error_revised;
    }
    const std::string names[] = {"intercept", "R", "social", "social_x_R"};
    report.ols = fit_ols(z, design, names);
  }

  // Fitted social-minus-nonsocial error difference across the R range.
  {
    const double b2 = report.ols.coefficients[2];
    const double b3 = report.ols.coefficients[3];
    const double var2 = report.ols.covariance[2 * 4 + 2];
    const double var3 = report.ols.covariance[3 * 4 + 3];
    const double cov23 = report.ols.covariance[2 * 4 + 3];
    constexpr std::size_t kGridPoints = 51;
    for (std::size_t k = 0; k < kGridPoints; ++k) {
      MarginalEffectPoint point;
      point.r = static_cast<double>(k) / static_cast<double>(kGridPoints - 1);
      point.effect = b2 + b3 * point.r;
      point.std_error = std::sqrt(var2 + point.r * point.r * var3 + 2.0 * point.r * cov23);
      report.marginal_effect.push_back(point);
    }
    report.crossover_r =
        b3 == 0.0 ? std::numeric_limits<double>::quiet_NaN() : -b2 / b3;
  }

  return report;
}

std::string report_to_json(const AnalysisReport& report) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const TaskSummary& t : report.tasks) {
    tasks.push_back({{"task_id", t.task_id}, {"r", t.r.r}, {"n_trials", t.n_trials}});
  }

  nlohmann::json marginal = nlohmann::json::object();
  {
    nlohmann::json r = nlohmann::json::array();
    nlohmann::json effect = nlohmann::json::array();
    nlohmann::json se = nlohmann::json::array();
    for (const MarginalEffectPoint& point : report.marginal_effect) {
      r.push_back(point.r);
      effect.push_back(point.effect);
      se.push_back(point.std_error);
    }
    marginal["r"] = r;
    marginal["effect"] = effect;
    marginal["std_error"] = se;
    marginal["crossover_r"] = report.crossover_r;
  }

  nlohmann::json meta = {
      {"n_trials", report.n_trials},
      {"n_social", report.n_social},
      {"n_nonsocial", report.n_nonsocial},
      {"n_tasks", report.tasks.size()},
      {"dropped_rows", report.meta.dropped_rows},
      {"model_note",
       "fixed-effects fits; per-group random coefficients are not modeled"},
  };
  if (report.meta.seed) {
    meta["seed"] = *report.meta.seed;
  }

  const nlohmann::json doc = {{"logistic", regression_to_json(report.logistic)},
                              {"ols", regression_to_json(report.ols)},
                              {"tasks", tasks},
                              {"marginal_effect", marginal},
                              {"meta", meta}};
  return doc.dump(2) + "\n";
}

std::string coefficient_table(const AnalysisReport& report) {
  std::ostringstream out;
  const auto print_fit = [&out](const char* title, const RegressionResult& fit,
                                const char* stat_name) {
    out << title << "  (n = " << fit.n_obs << ", " << (fit.converged ? "converged" : "NOT converged")
        << ")\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-12s %12s %12s %10s %12s\n", "term", "coef", "std_err",
                  stat_name, "p");
    out << buf;
    for (std::size_t j = 0; j < fit.names.size(); ++j) {
      std::snprintf(buf, sizeof buf, "  %-12s %12.5f %12.5f %10.3f %12.4g\n",
                    fit.names[j].c_str(), fit.coefficients[j], fit.std_errors[j],
                    fit.wald_stats[j], fit.p_values[j]);
      out << buf;
    }
  };
  print_fit("improved ~ 1 + R   [logistic, social trials]", report.logistic, "z");
  out << '\n';
  print_fit("z_abs_error_revised ~ 1 + R + social + social:R   [OLS, all trials]", report.ols,
            "t");
  out << '\n';
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "fitted social-vs-nonsocial error difference changes sign at R = %.4f\n",
                report.crossover_r);
  out << buf;
  out << "note: fixed-effects fits; per-group random coefficients are not modeled\n";
  return out.str();
}

std::vector<TrialRecord> generate_synthetic(const SynthConfig& config) {
  if (config.n_tasks == 0 || config.groups_per_task == 0 || config.group_size == 0) {
    throw DomainError("generate_synthetic requires positive counts");
  }
  if (!(config.sigma_lo > 0.0) || !(config.sigma_hi >= config.sigma_lo)) {
    throw DomainError("generate_synthetic requires 0 < sigma_lo <= sigma_hi");
  }
  if (!(config.theta > 0.0)) {
    throw DomainError("generate_synthetic requires theta > 0");
  }
  const Centralization omega(config.omega_social);  // validates [0, 1]

  constexpr double kRevisionStep = 0.7;
  std::vector<TrialRecord> trials;
  trials.reserve(config.n_tasks * config.groups_per_task);

  char id[32];
  for (std::size_t task = 0; task < config.n_tasks; ++task) {
    const std::uint64_t task_key = rng::derive(config.seed, task);
    const double sigma =
        config.sigma_lo + (config.sigma_hi - config.sigma_lo) * rng::uniform01(task_key, 0);
    // Heavy contexts skew toward overestimation (u capped at 0.4): tasks
    // with a mean-unbiased crowd would make social influence a pure
    // variance penalty, which drowns the planted moderation signal.
    const double bias_sign = -1.0 + 1.4 * rng::uniform01(task_key, 1);

    // Tasks alternate between a heavy-tailed and a thin-tailed estimation
    // context, so the per-task R values span both sides of 0.5 the way
    // empirical task collections do. Thin contexts map the drawn dispersion
    // onto a modest coefficient of variation.
    const bool heavy_tailed = task % 2 == 0;
    DistributionSpec spec;
    if (heavy_tailed) {
      const double mu = std::log(config.theta) - 0.5 * sigma * sigma * bias_sign;
      spec = DistributionSpec::log_normal(mu, sigma);
    } else {
      const double mean = config.theta * (1.0 + 0.1 * bias_sign);
      const double cv = 0.1 + 0.06 * sigma;
      spec = DistributionSpec::normal(mean, cv * mean);
    }

    std::snprintf(id, sizeof id, "task_%03zu", task);
    const std::string task_id = id;

    for (std::size_t group = 0; group < config.groups_per_task; ++group) {
      TrialRecord trial;
      trial.dataset_id = "synthetic";
      trial.task_id = task_id;
      std::snprintf(id, sizeof id, "g_%03zu", group);
      trial.group_id = id;
      trial.social = group % 5 < 3;  // 3 of every 5 groups interact
      trial.truth = config.theta;

      const std::uint64_t group_key = rng::derive(task_key, 2 + group);
      trial.initial_estimates.reserve(config.group_size);
      trial.initial_estimates.clear();
      for (std::uint64_t index = 0; trial.initial_estimates.size() < config.group_size; ++index) {
        const double x = quantile(spec, rng::uniform01(group_key, index));
        if (x > 0.0) trial.initial_estimates.push_back(x);  // thin contexts resample nonpositives
      }
      if (trial.social && config.group_size > 1) {
        // Groups exchange magnitudes multiplicatively: the revision target
        // is the omega-weighted collective of the log estimates. A lone
        // agent has nothing to aggregate and keeps its estimate.
        std::vector<double> logs(config.group_size);
        for (std::size_t i = 0; i < config.group_size; ++i) {
          logs[i] = std::log(trial.initial_estimates[i]);
        }
        const double target = std::exp(collective_estimate(logs, omega));
        trial.revised_estimates.resize(config.group_size);
        for (std::size_t i = 0; i < config.group_size; ++i) {
          const double a = trial.initial_estimates[i];
          trial.revised_estimates[i] = a + kRevisionStep * (target - a);
        }
      } else {
        trial.revised_estimates = trial.initial_estimates;
      }
      trials.push_back(std::move(trial));
    }
  }
  return trials;
}

}  // namespace crowdbound
