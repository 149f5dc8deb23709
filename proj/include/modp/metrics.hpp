#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "modp/pareto.hpp"

namespace modp {

/**
 * Area dominated by a two-objective front relative to ref.
 *
 * Vectors that do not exceed ref in both objectives add nothing. Throws
 * std::invalid_argument("2-objective only") when ref is not two-dimensional
 * and on a dimension mismatch between front and ref.
 */
double hypervolume_2d(const FrontSet& front, std::span<const double> ref);

/// (R·d + 1)^(q-1): front-size bound for deterministic, integer-reward, undiscounted
/// episodes of length at most d. Saturates at UINT64_MAX.
std::uint64_t prop1_bound(double range, std::uint64_t depth, unsigned objectives);

/// ceil((R·n + 1) / eps)^(q-1): front-size bound for W_LP(eps) after n sweeps.
std::uint64_t prop2_bound(double range, std::uint64_t iterations, unsigned objectives, double eps);

/**
 * Additive epsilon indicator: the smallest shift t such that every vector of
 * exact is weakly dominated by some vector of approx shifted up by t, clamped
 * at 0. Throws std::invalid_argument when either set is empty.
 */
double approx_distance(const FrontSet& approx, const FrontSet& exact);

/// Shortest text that reads back to the same double (at most 17 significant digits).
std::string format_real(double x);

/// CSV with header obj1,…,objq and one row per vector, lexicographically descending.
std::string export_front_csv(const FrontSet& front);
void write_front_csv(const FrontSet& front, const std::filesystem::path& path);

/// Parses export_front_csv output. Throws std::invalid_argument on malformed input.
FrontSet parse_front_csv(std::string_view text);
FrontSet read_front_csv(const std::filesystem::path& path);

/// Fixed-width text table: one header row, then data rows padded per column.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

}  // namespace modp
