#include "modp/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace modp {

namespace {

void require_valid(const Momdp& m) {
  auto violations = validate(m);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid model: " + violations.front().message +
                                (violations.size() > 1 ? " (+" + std::to_string(violations.size() - 1) + " more)" : ""));
  }
}

std::optional<Clock::time_point> deadline_from(const SolveOptions& options, Clock::time_point start) {
  if (!options.budget) return std::nullopt;
  return start + *options.budget;
}

// One sweep V_{i-1} → V_i. Backups of distinct states only read prev and write
// their own entry of next, so they can run on several threads.
void sweep(const Momdp& m, const FrontMap& prev, FrontMap& next, std::optional<double> precision,
           const BackupOptions& backup_options, std::size_t threads, std::vector<std::size_t>& transient) {
  const std::size_t n = m.state_count();
  auto work = [&](StateIndex s) {
    if (m.is_terminal(s)) {
      next.set(s, FrontSet::zero(m.objectives()));
      return;
    }
    BackupStats stats;
    next.set(s, backup_state(m, s, prev, precision, backup_options, &stats));
    transient[s] = stats.transient_vectors;
  };

  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (StateIndex s = 0; s < n; ++s) work(s);
    return;
  }
  std::atomic<StateIndex> cursor{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (StateIndex s = cursor++; s < n && !failed; s = cursor++) {
          try {
            work(s);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

SolveReport value_iteration(const Momdp& m, std::size_t iterations, std::optional<double> precision,
                            const SolveOptions& options) {
  const auto start = Clock::now();
  require_valid(m);
  if (precision && !(*precision > 0.0)) throw std::invalid_argument("precision must be positive");
  const BackupOptions backup_options{options.product_mode, deadline_from(options, start)};

  SolveReport report;
  FrontMap prev = FrontMap::zeros(m);
  report.peak_vector_count = prev.total_vectors();
  std::vector<std::size_t> transient(m.state_count(), 0);

  for (std::size_t i = 1; i <= iterations; ++i) {
    FrontMap next(m.state_count());
    next.set_iteration(i);
    std::fill(transient.begin(), transient.end(), 0);
    try {
      sweep(m, prev, next, precision, backup_options, options.threads, transient);
    } catch (const BudgetExceeded&) {
      report.status = SolveStatus::kBudgetExceeded;
      break;
    }
    // Thread-independent accounting: both sweeps plus the largest single-state transient.
    const std::size_t largest = *std::max_element(transient.begin(), transient.end());
    report.peak_vector_count =
        std::max(report.peak_vector_count, prev.total_vectors() + next.total_vectors() + largest);
    if (options.on_sweep) options.on_sweep(next);
    prev = std::move(next);
  }
  report.iterations_run = prev.iteration();
  report.front_map = std::move(prev);
  report.wall_time = Clock::now() - start;
  return report;
}

}  // namespace

FrontMap FrontMap::zeros(const Momdp& m) {
  FrontMap map(m.state_count());
  for (StateIndex s = 0; s < m.state_count(); ++s) map.set(s, FrontSet::zero(m.objectives()));
  return map;
}

const FrontSet& FrontMap::at(StateIndex s) const {
  if (!has(s)) throw std::out_of_range("front map has no entry for state " + std::to_string(s));
  return *entries_[s];
}

std::size_t FrontMap::total_vectors() const {
  std::size_t total = 0;
  for (const auto& e : entries_) {
    if (e) total += e->size();
  }
  return total;
}

SolveReport solve_w(const Momdp& m, std::size_t iterations, const SolveOptions& options) {
  return value_iteration(m, iterations, std::nullopt, options);
}

SolveReport solve_wlp(const Momdp& m, std::size_t iterations, double precision, const SolveOptions& options) {
  if (!(precision > 0.0)) throw std::invalid_argument("precision must be positive");
  return value_iteration(m, iterations, precision, options);
}

SolveReport solve_b(const Momdp& m, const SolveOptions& options) {
  const auto start = Clock::now();
  require_valid(m);
  std::vector<StateIndex> order;
  try {
    order = topological_order(m);
  } catch (const CyclicModelError&) {
    throw CyclicModelError("algorithm B requires a DAG");
  }
  const BackupOptions backup_options{options.product_mode, deadline_from(options, start)};

  SolveReport report;
  FrontMap fronts(m.state_count());
  try {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const StateIndex s = *it;
      if (m.is_terminal(s)) {
        fronts.set(s, FrontSet::zero(m.objectives()));
        report.peak_vector_count = std::max(report.peak_vector_count, fronts.total_vectors());
        continue;
      }
      BackupStats stats;
      const std::size_t stored = fronts.total_vectors();
      fronts.set(s, backup_state(m, s, fronts, std::nullopt, backup_options, &stats));
      report.peak_vector_count =
          std::max(report.peak_vector_count, stored + std::max(stats.transient_vectors, fronts.at(s).size()));
    }
    report.iterations_run = 1;
    fronts.set_iteration(1);
  } catch (const BudgetExceeded&) {
    report.status = SolveStatus::kBudgetExceeded;
  }
  if (report.completed() && options.on_sweep) options.on_sweep(fronts);
  report.front_map = std::move(fronts);
  report.wall_time = Clock::now() - start;
  return report;
}

}  // namespace modp
