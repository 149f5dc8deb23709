#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "modp/environments.hpp"
#include "modp/pareto.hpp"

namespace modp::cli {

struct ReproduceOptions {
  int table = 1;  ///< 1, 2 (treasure grid) or 3, 4 (pyramid)
  std::chrono::duration<double> budget{60.0};  ///< per cell
  int max_instance = 0;  ///< 0 means the full range
  env::PyramidOptions pyramid;
  std::size_t threads = 1;
};

enum class CellStatus { kCompleted, kBudgetExceeded, kSkipped };

struct CellResult {
  int instance = 0;
  std::string algorithm;  ///< "B" or "WLP"
  std::optional<double> eps;
  CellStatus status = CellStatus::kSkipped;
  std::size_t cardinality = 0;
  double hypervolume = 0.0;
  std::size_t peak_vectors = 0;
  double seconds = 0.0;
  FrontSet front;  ///< empty unless completed
};

struct ReproduceResult {
  std::vector<CellResult> cells;
  std::string table;  ///< rendered like the published table
};

/// Precisions swept by each table, in column order.
std::vector<double> table_precisions(int table);

/// Runs every cell of a table. Cells that run out of budget stop the rest of
/// their column (larger instances only take longer).
ReproduceResult reproduce(const ReproduceOptions& options);

/// table,instance,algorithm,eps,cardinality,hypervolume,peak_vectors,seconds,status
std::string results_csv(int table, const std::vector<CellResult>& cells);

/// Writes results.csv and one front CSV per completed cell under dir.
void write_reproduction(const std::filesystem::path& dir, int table, const ReproduceResult& result);

std::string status_name(CellStatus status);

}  // namespace modp::cli
