#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modp/momdp.hpp"
#include "modp/pareto.hpp"

namespace modp {

/// Per-state front assignment V_i(s), tagged with the sweep index i.
class FrontMap {
 public:
  FrontMap() = default;
  explicit FrontMap(std::size_t states) : entries_(states) {}

  /// V_0: every state maps to {0⃗}.
  static FrontMap zeros(const Momdp& m);

  std::size_t size() const { return entries_.size(); }
  bool has(StateIndex s) const { return s < entries_.size() && entries_[s].has_value(); }
  /// Throws std::out_of_range when s has no entry.
  const FrontSet& at(StateIndex s) const;
  void set(StateIndex s, FrontSet front) { entries_.at(s) = std::move(front); }

  std::size_t iteration() const { return iteration_; }
  void set_iteration(std::size_t i) { iteration_ = i; }

  /// Σ_s |V(s)| over assigned entries.
  std::size_t total_vectors() const;

  /// Entry-wise equality, ignoring the iteration tag.
  bool same_fronts(const FrontMap& other) const { return entries_ == other.entries_; }

 private:
  std::vector<std::optional<FrontSet>> entries_;
  std::size_t iteration_ = 0;
};

/// How a backup combines successor fronts.
enum class ProductMode {
  /// Sum one successor at a time, pruning dominated partial sums in between.
  kStaged,
  /// Enumerate the full cartesian product, then filter once.
  kFullProduct,
};

/// Thrown from inside a solve when its cooperative deadline passes.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded() : std::runtime_error("time budget exceeded") {}
};

using Clock = std::chrono::steady_clock;

struct BackupOptions {
  ProductMode product_mode = ProductMode::kStaged;
  std::optional<Clock::time_point> deadline;
};

struct BackupStats {
  /// Largest number of candidate vectors held at once while backing up.
  std::size_t transient_vectors = 0;
};

/**
 * One vector Bellman backup of state s against the fronts in prev.
 *
 * For each action the successor fronts are combined into
 * T(a) = { Σ_k p_k (r⃗_k + γ v⃗_k) }, summed in ascending successor order. With a
 * precision each T(a) is rounded to the eps-grid before the union. Returns
 * ND(∪_a T(a)).
 *
 * Throws std::invalid_argument for a terminal s and std::out_of_range when a
 * successor has no entry in prev.
 */
FrontSet backup_state(const Momdp& m, StateIndex s, const FrontMap& prev,
                      std::optional<double> precision = std::nullopt,
                      const BackupOptions& options = {}, BackupStats* stats = nullptr);

enum class SolveStatus { kCompleted, kBudgetExceeded };

struct SolveOptions {
  ProductMode product_mode = ProductMode::kStaged;
  /// Worker threads for the states of one sweep (W and W_LP only).
  std::size_t threads = 1;
  /// Cooperative wall-clock budget, checked between and inside backups.
  std::optional<Clock::duration> budget;
  /// Called with each completed sweep V_i (W, W_LP) or the final map (B).
  std::function<void(const FrontMap&)> on_sweep;
};

struct SolveReport {
  /// V_n, or the last complete sweep when the budget ran out.
  FrontMap front_map;
  std::size_t iterations_run = 0;
  /// Peak simultaneous vectors across V_i, V_{i-1} and the backup transients.
  std::size_t peak_vector_count = 0;
  std::chrono::duration<double> wall_time{};
  SolveStatus status = SolveStatus::kCompleted;

  bool completed() const { return status == SolveStatus::kCompleted; }
};

/// n sweeps of multi-objective value iteration from V_0 = {0⃗}.
SolveReport solve_w(const Momdp& m, std::size_t iterations, const SolveOptions& options = {});

/// solve_w with every T(a) rounded to the eps-grid before the union.
SolveReport solve_wlp(const Momdp& m, std::size_t iterations, double precision,
                      const SolveOptions& options = {});

/// Exact backwards recursion over a DAG; each state is backed up once.
/// Throws CyclicModelError("algorithm B requires a DAG") on cyclic models.
SolveReport solve_b(const Momdp& m, const SolveOptions& options = {});

}  // namespace modp
