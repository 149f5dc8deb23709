#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "modp/momdp.hpp"

namespace modp::env {

/// Chain s0 … sd with two deterministic actions per stage: a1 → (0, 1), a2 → (1, 0).
Momdp hansen(int depth, double gamma = 1.0);

/**
 * Variants of the chain that break one tractability assumption each.
 *
 * kExponential: stage i (1-based) pays (0, 2^i) or (2^i, 0).
 * kFractional:  stage i pays (0, 2^-i) or (2^-i, 0).
 * kDiscounted:  unit rewards with γ = 1/2.
 * kNondeterministic: unit rewards, γ = 1, and every action reaches the next
 *   stage or an absorbing terminal g with probability 1/2 each (the stage
 *   reward is paid on both outcomes).
 */
enum class HansenKind { kExponential, kFractional, kDiscounted, kNondeterministic };

Momdp hansen_variant(int depth, HansenKind kind);
HansenKind parse_hansen_kind(std::string_view name);

/**
 * kStochasticLoop: s0 with two actions that loop back with probability 1/2
 * (paying (0, 1) or (1, 0)) and exit to terminal s1 otherwise (paying 0⃗).
 * kContinuing: a single state with two self-loops paying (0, 1) and (1, 0),
 * no terminals, γ = 1/2.
 */
enum class CyclicKind { kStochasticLoop, kContinuing };

Momdp cyclic_example(CyclicKind kind);
CyclicKind parse_cyclic_kind(std::string_view name);

/// Sea-floor depth and treasure value per column of the treasure grid.
struct DepthProfile {
  std::vector<int> depths;
  std::vector<double> treasures;

  /// depths 1 2 3 4 4 4 7 7 9 10; treasures 1 2 3 5 8 16 24 50 74 124.
  static DepthProfile canonical();

  /// Throws std::invalid_argument on unequal lengths, non-positive or decreasing depths.
  void check() const;
};

/**
 * The stochastic right-down treasure grid restricted to its leftmost columns.
 *
 * Cells (c, r) with r ≤ depth(c); the start is (0, 0) and (c, depth(c)) is a
 * terminal treasure cell. Down is always available, Right only while a column
 * remains to the right. With both available the chosen move happens with
 * probability p_intended and the other with 1 - p_intended. Every move pays
 * (-1, 0), plus (0, treasure) when it lands on a treasure cell. γ is 1.
 */
Momdp sdst_rd(int columns, double p_intended = 0.8,
              const DepthProfile& profile = DepthProfile::canonical());

/// Distance to the most distant treasure: (columns - 1) + depth(columns - 1).
std::size_t sdst_rd_horizon(int columns, const DepthProfile& profile = DepthProfile::canonical());

enum class PyramidNoise {
  kUniformAll,     ///< noise mass spread over every available move, the chosen one included
  kUniformOthers,  ///< noise mass spread over the moves other than the chosen one
};

enum class PyramidIndexing { kOneBased, kZeroBased };

struct PyramidOptions {
  double p_intended = 0.95;
  PyramidNoise noise = PyramidNoise::kUniformAll;
  PyramidIndexing indexing = PyramidIndexing::kOneBased;
};

/**
 * N × N grid with cells (x, y), 1 ≤ x, y ≤ N, start (1, 1) and terminals on
 * the anti-diagonal x + y = N + 1. Actions are the cardinal moves that stay
 * on the grid. Entering a non-terminal cell pays (-1, -1); entering terminal
 * (x, y) pays (10x, 10y), with x and y shifted down by one under kZeroBased.
 */
Momdp pyramid(int n, const PyramidOptions& options = {});

}  // namespace modp::env
