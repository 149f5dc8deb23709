#pragma once

// Internal helpers for combining successor fronts inside a backup.

#include <cstddef>
#include <optional>
#include <span>

#include "modp/pareto.hpp"
#include "modp/solvers.hpp"

namespace modp::detail {

/// Checks the deadline every few thousand calls; throws BudgetExceeded once it has passed.
class DeadlineGuard {
 public:
  explicit DeadlineGuard(std::optional<Clock::time_point> deadline) : deadline_(deadline) {}

  void tick() {
    if (deadline_ && (++count_ & 0xFFF) == 0 && Clock::now() > *deadline_) throw BudgetExceeded();
  }
  void check() const {
    if (deadline_ && Clock::now() > *deadline_) throw BudgetExceeded();
  }

 private:
  std::optional<Clock::time_point> deadline_;
  std::size_t count_ = 0;
};

/// Products up to this many candidates are materialized and sorted; larger
/// two-objective products are merged lazily row by row.
inline constexpr std::size_t kMaterializeLimit = std::size_t{1} << 20;

/**
 * ND({a + b : a ∈ lhs, b ∈ rhs}) with each sum formed as lhs_i + rhs_i.
 *
 * Both inputs must be nondominated sets of equal dimension. `transient`, when
 * given, receives the largest number of candidates held at once.
 */
FrontSet minkowski_nd(const FrontSet& lhs, const FrontSet& rhs, DeadlineGuard& guard,
                      std::size_t materialize_limit = kMaterializeLimit,
                      std::size_t* transient = nullptr);

}  // namespace modp::detail
