#include "minkowski.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace modp::detail {

namespace {

FrontSet materialized_sum(const FrontSet& lhs, const FrontSet& rhs, DeadlineGuard& guard,
                          std::size_t* transient) {
  const std::size_t dim = lhs.dimension();
  std::vector<double> flat;
  flat.reserve(lhs.size() * rhs.size() * dim);
  for (auto a : lhs) {
    for (auto b : rhs) {
      for (std::size_t i = 0; i < dim; ++i) flat.push_back(a[i] + b[i]);
      guard.tick();
    }
  }
  FrontSet out = nd_filter(dim, flat);
  if (transient) *transient = std::max(*transient, lhs.size() * rhs.size() + out.size());
  return out;
}

// Lazy k-way merge of the rows a_i + B in order of decreasing first objective.
// Memory is O(|lhs| + |output|) instead of O(|lhs| · |rhs|).
FrontSet merged_sum_2d(const FrontSet& lhs, const FrontSet& rhs, DeadlineGuard& guard,
                       std::size_t* transient) {
  struct Cursor {
    double x, y;
    std::size_t row, col;
  };
  auto lower = [](const Cursor& p, const Cursor& q) { return p.x < q.x || (p.x == q.x && p.y < q.y); };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(lower)> heap(lower);
  auto make = [&](std::size_t row, std::size_t col) {
    return Cursor{lhs[row][0] + rhs[col][0], lhs[row][1] + rhs[col][1], row, col};
  };
  for (std::size_t row = 0; row < lhs.size(); ++row) heap.push(make(row, 0));

  // Within a row the first objective is nonincreasing, but float rounding can
  // produce equal first objectives with increasing second objective, so a kept
  // point may later be replaced by one with the same x and a larger y.
  std::vector<double> kept;
  double best = -std::numeric_limits<double>::infinity();
  while (!heap.empty()) {
    Cursor c = heap.top();
    heap.pop();
    guard.tick();
    if (c.col + 1 < rhs.size()) heap.push(make(c.row, c.col + 1));
    if (c.y <= best) continue;
    if (!kept.empty() && kept[kept.size() - 2] == c.x) {
      kept.back() = c.y;
    } else {
      kept.push_back(c.x);
      kept.push_back(c.y);
    }
    best = c.y;
  }
  FrontSet out = nd_filter(2, kept);
  if (transient) *transient = std::max(*transient, lhs.size() + out.size());
  return out;
}

}  // namespace

FrontSet minkowski_nd(const FrontSet& lhs, const FrontSet& rhs, DeadlineGuard& guard,
                      std::size_t materialize_limit, std::size_t* transient) {
  if (lhs.dimension() != rhs.dimension()) throw std::invalid_argument("minkowski_nd: dimension mismatch");
  if (lhs.empty() || rhs.empty()) return FrontSet(lhs.dimension());
  const bool small = lhs.size() <= materialize_limit / rhs.size();
  if (lhs.dimension() != 2 || small) return materialized_sum(lhs, rhs, guard, transient);
  return merged_sum_2d(lhs, rhs, guard, transient);
}

}  // namespace modp::detail
