#include "crowdbound/omega.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "crowdbound/errors.hpp"
#include "crowdbound/rng.hpp"

namespace crowdbound {

namespace {

OmegaEstimate make_estimate(std::size_t wins, std::size_t reps) {
  OmegaEstimate est;
  est.reps = reps;
  est.value = static_cast<double>(wins) / static_cast<double>(reps);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(reps));
  return est;
}

// Objective of the analytical bound. The tail factor is evaluated through
// the survival function so it stays accurate when F(n beta) is within an
// ulp of 1 (which is the interesting regime for large n).
double bound_objective(const DistributionSpec& spec, std::size_t n, double beta) {
  const double tail = survival(spec, beta * static_cast<double>(n));
  if (tail >= 1.0) return 0.0;
  const double one_minus_pow = -std::expm1(static_cast<double>(n - 1) * std::log1p(-tail));
  return cdf(spec, beta) * one_minus_pow;
}

// Golden-section maximization of f over [a, b] (log-beta coordinates).
double golden_section_max(const std::function<double(double)>& f, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

void append_double(std::string& out, double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(len));
}

std::vector<double> linspace(const AxisRange& range) {
  std::vector<double> axis(range.steps);
  const double step = (range.hi - range.lo) / static_cast<double>(range.steps - 1);
  for (std::size_t i = 0; i < range.steps; ++i) {
    axis[i] = range.lo + static_cast<double>(i) * step;
  }
  return axis;
}

}  // namespace

OmegaEstimate estimate_omega(const DistributionSpec& spec, double theta, std::size_t n,
                             Centralization omega, std::size_t reps, std::uint64_t seed) {
  spec.validate();
  if (!(theta > 0.0)) {
    throw DomainError("estimate_omega requires theta > 0");
  }
  if (n == 0 || reps == 0) {
    throw DomainError("estimate_omega requires n >= 1 and reps >= 1");
  }

  const double om = omega.value();
  if (om == 0.0 || n == 1) {
    // Centralized and decentralized estimates coincide; the strict
    // inequality never fires.
    return make_estimate(0, reps);
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  std::size_t wins = 0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const std::uint64_t base = rep * static_cast<std::uint64_t>(n);
    double first = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = quantile(spec, rng::uniform01(seed, base + i));
      if (i == 0) first = x;
      sum += x;
    }
    const double mean = sum * inv_n;
    const double centralized = om == 1.0 ? first : om * first + (1.0 - om) * mean;
    if (std::abs(centralized - theta) < std::abs(mean - theta)) ++wins;
  }
  return make_estimate(wins, reps);
}

BoundResult lower_bound(const DistributionSpec& spec, double theta, std::size_t n,
                        Centralization omega) {
  spec.validate();
  if (spec.family == Family::Normal) {
    throw DomainError("lower_bound requires a family supported on the positive reals");
  }
  if (!(theta > 0.0)) {
    throw DomainError("lower_bound requires theta > 0");
  }
  if (n == 0) {
    throw DomainError("lower_bound requires n >= 1");
  }
  if (omega.value() >= 1.0) {
    throw InfeasibleConstraintError(
        "the constraint beta > theta/(1 - omega) is empty at omega = 1");
  }

  BoundResult result;
  result.feasible_from = theta / (1.0 - omega.value());

  // Coarse log-spaced grid over the feasible part of the quantile span.
  const double lo = std::max(result.feasible_from * (1.0 + 1e-12), quantile(spec, 1e-6));
  double hi = quantile(spec, 1.0 - 1e-9);
  if (!(hi > lo)) hi = lo * 10.0;

  constexpr std::size_t kGridPoints = 256;
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  const double step = (log_hi - log_lo) / static_cast<double>(kGridPoints - 1);

  auto objective_log = [&](double t) { return bound_objective(spec, n, std::exp(t)); };

  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t k = 0; k < kGridPoints; ++k) {
    const double value = objective_log(log_lo + static_cast<double>(k) * step);
    if (value > best_value) {
      best_value = value;
      best = k;
    }
  }

  const double bracket_lo = log_lo + static_cast<double>(best == 0 ? 0 : best - 1) * step;
  const double bracket_hi =
      log_lo + static_cast<double>(best + 1 >= kGridPoints ? kGridPoints - 1 : best + 1) * step;
  const double t_star = golden_section_max(objective_log, bracket_lo, bracket_hi, 1e-8);

  result.beta_star = std::exp(t_star);
  result.value = bound_objective(spec, n, result.beta_star);
  return result;
}

PhaseGrid phase_diagram(Family family, const AxisRange& mu_range, const AxisRange& sigma_range,
                        double theta, std::size_t n, Centralization omega, std::size_t reps,
                        std::uint64_t seed, unsigned max_threads) {
  if (mu_range.steps < 2 || sigma_range.steps < 2) {
    throw DomainError("phase_diagram requires at least 2 steps per axis");
  }
  if (!(sigma_range.lo > 0.0)) {
    throw DomainError("phase_diagram requires sigma lo > 0");
  }

  PhaseGrid grid;
  grid.mu_axis = linspace(mu_range);
  grid.sigma_axis = linspace(sigma_range);
  grid.cells.resize(grid.mu_axis.size() * grid.sigma_axis.size());

  const std::size_t n_sigma = grid.sigma_axis.size();
  detail::parallel_for(grid.cells.size(), max_threads, [&](std::size_t cell) {
    const std::size_t i = cell / n_sigma;
    const std::size_t j = cell % n_sigma;
    const DistributionSpec spec{family, grid.mu_axis[i], grid.sigma_axis[j]};
    const std::uint64_t cell_seed = rng::derive(rng::derive(seed, i), j);
    grid.cells[cell] = estimate_omega(spec, theta, n, omega, reps, cell_seed);
  });
  return grid;
}

LossComparison expected_loss_compare(const DistributionSpec& spec, double theta, std::size_t n,
                                     Centralization omega, Loss loss, std::size_t reps,
                                     std::uint64_t seed) {
  spec.validate();
  if (!(theta > 0.0)) {
    throw DomainError("expected_loss_compare requires theta > 0");
  }
  if (n == 0 || reps == 0) {
    throw DomainError("expected_loss_compare requires n >= 1 and reps >= 1");
  }

  const double om = omega.value();
  const double inv_n = 1.0 / static_cast<double>(n);
  const auto apply = [loss](double d) { return loss == Loss::Absolute ? std::abs(d) : d * d; };

  double acc_centralized = 0.0;
  double acc_decentralized = 0.0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const std::uint64_t base = rep * static_cast<std::uint64_t>(n);
    double first = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = quantile(spec, rng::uniform01(seed, base + i));
      if (i == 0) first = x;
      sum += x;
    }
    const double mean = sum * inv_n;
    double centralized = mean;
    if (n > 1 && om > 0.0) {
      centralized = om == 1.0 ? first : om * first + (1.0 - om) * mean;
    }
    acc_centralized += apply(centralized - theta);
    acc_decentralized += apply(mean - theta);
  }
  const double inv_reps = 1.0 / static_cast<double>(reps);
  return {acc_centralized * inv_reps, acc_decentralized * inv_reps};
}

std::string PhaseGrid::to_csv() const {
  std::string out = "mu,sigma,omega_value,std_error,reps\n";
  for (std::size_t i = 0; i < mu_axis.size(); ++i) {
    for (std::size_t j = 0; j < sigma_axis.size(); ++j) {
      const OmegaEstimate& cell = at(i, j);
      append_double(out, mu_axis[i]);
      out.push_back(',');
      append_double(out, sigma_axis[j]);
      out.push_back(',');
      append_double(out, cell.value);
      out.push_back(',');
      append_double(out, cell.std_error);
      out.push_back(',');
      out += std::to_string(cell.reps);
      out.push_back('\n');
    }
  }
  return out;
}

PhaseGrid PhaseGrid::from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "mu,sigma,omega_value,std_error,reps") {
    throw ParseError(1, "expected header mu,sigma,omega_value,std_error,reps");
  }

  struct Row {
    double mu, sigma;
    OmegaEstimate est;
  };
  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Row row;
    double se = 0.0;
    double value = 0.0;
    unsigned long long reps = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    auto field = [&](auto& target) {
      auto [next, ec] = std::from_chars(p, end, target);
      if (ec != std::errc{}) throw ParseError(line_no, "malformed number");
      p = next;
      if (p < end && *p == ',') ++p;
    };
    field(row.mu);
    field(row.sigma);
    field(value);
    field(se);
    field(reps);
    row.est.value = value;
    row.est.std_error = se;
    row.est.reps = static_cast<std::size_t>(reps);
    rows.push_back(row);
  }
  if (rows.empty()) {
    throw EmptyInputError("phase CSV has no cells");
  }

  PhaseGrid grid;
  for (const Row& row : rows) {
    if (grid.mu_axis.empty() || row.mu != grid.mu_axis.back()) grid.mu_axis.push_back(row.mu);
  }
  const std::size_t n_sigma = rows.size() / grid.mu_axis.size();
  for (std::size_t j = 0; j < n_sigma; ++j) grid.sigma_axis.push_back(rows[j].sigma);
  if (grid.mu_axis.size() * grid.sigma_axis.size() != rows.size()) {
    throw ParseError(line_no, "cell count does not factor into a full grid");
  }
  grid.cells.reserve(rows.size());
  for (const Row& row : rows) grid.cells.push_back(row.est);
  return grid;
}

namespace detail {

void parallel_for(std::size_t count, unsigned max_threads,
                  const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  unsigned workers = max_threads == 0 ? std::thread::hardware_concurrency() : max_threads;
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));

  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail
}  // namespace crowdbound
