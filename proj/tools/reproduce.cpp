#include "reproduce.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "modp/metrics.hpp"
#include "modp/solvers.hpp"

namespace modp::cli {

namespace {

bool grid_table(int table) { return table == 1 || table == 2; }

std::string fixed(double x, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, x);
  return buffer;
}

std::string eps_label(double eps) { return format_real(eps); }

CellResult run_cell(const Momdp& m, int instance, std::optional<double> eps, std::size_t iterations,
                    const std::vector<double>& ref, const ReproduceOptions& options) {
  SolveOptions solve;
  solve.budget = std::chrono::duration_cast<Clock::duration>(options.budget);
  solve.threads = options.threads;
  const SolveReport report = eps ? solve_wlp(m, iterations, *eps, solve) : solve_b(m, solve);

  CellResult cell;
  cell.instance = instance;
  cell.algorithm = eps ? "WLP" : "B";
  cell.eps = eps;
  cell.peak_vectors = report.peak_vector_count;
  cell.seconds = report.wall_time.count();
  if (!report.completed()) {
    cell.status = CellStatus::kBudgetExceeded;
    return cell;
  }
  cell.status = CellStatus::kCompleted;
  cell.front = report.front_map.at(m.start());
  cell.cardinality = cell.front.size();
  cell.hypervolume = hypervolume_2d(cell.front, ref);
  return cell;
}

std::string front_file_name(int table, const CellResult& cell) {
  std::string name = (grid_table(table) ? "sdst-rd-" : "pyramid-") + std::to_string(cell.instance) + "_" + cell.algorithm;
  if (cell.eps) name += "-" + eps_label(*cell.eps);
  return name + ".csv";
}

}  // namespace

std::string status_name(CellStatus status) {
  switch (status) {
    case CellStatus::kCompleted: return "completed";
    case CellStatus::kBudgetExceeded: return "budget-exceeded";
    case CellStatus::kSkipped: return "skipped";
  }
  return "unknown";
}

std::vector<double> table_precisions(int table) {
  if (grid_table(table)) return {0.001, 0.01, 0.02, 0.05, 0.1};
  if (table == 3 || table == 4) return {0.005, 0.01, 0.05, 0.1, 1.0};
  throw std::invalid_argument("table must be 1, 2, 3 or 4");
}

ReproduceResult reproduce(const ReproduceOptions& options) {
  const auto precisions = table_precisions(options.table);
  if (!(options.budget.count() > 0.0)) throw std::invalid_argument("budget must be positive");
  const bool grid = grid_table(options.table);
  const int first = grid ? 1 : 2;
  const int last_possible = grid ? 10 : 5;
  const int last = options.max_instance > 0 ? std::min(options.max_instance, last_possible) : last_possible;
  if (options.max_instance != 0 && options.max_instance < first) {
    throw std::invalid_argument("max instance must be at least " + std::to_string(first));
  }
  const std::vector<double> ref = grid ? std::vector<double>{-25, 0} : std::vector<double>{-20, -20};

  // Columns: B (grid tables only), then one per precision.
  std::vector<std::optional<double>> columns;
  if (grid) columns.push_back(std::nullopt);
  for (double eps : precisions) columns.push_back(eps);
  std::vector<bool> column_open(columns.size(), true);

  ReproduceResult result;
  std::vector<std::vector<std::string>> rows;
  for (int i = first; i <= last; ++i) {
    const Momdp m = grid ? env::sdst_rd(i) : env::pyramid(i, options.pyramid);
    const std::size_t iterations = grid ? env::sdst_rd_horizon(i) : static_cast<std::size_t>(3 * i);
    std::vector<std::string> row{std::to_string(i)};
    for (std::size_t c = 0; c < columns.size(); ++c) {
      CellResult cell;
      if (column_open[c]) {
        cell = run_cell(m, i, columns[c], iterations, ref, options);
        if (cell.status != CellStatus::kCompleted) column_open[c] = false;
      } else {
        cell.instance = i;
        cell.algorithm = columns[c] ? "WLP" : "B";
        cell.eps = columns[c];
      }
      if (cell.status != CellStatus::kCompleted) {
        row.push_back("-");
      } else if (options.table == 1 || options.table == 3) {
        row.push_back(std::to_string(cell.cardinality));
      } else {
        row.push_back(fixed(cell.hypervolume, options.table == 2 ? 1 : 2));
      }
      result.cells.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::string> header{grid ? "Subpr." : "N"};
  for (const auto& column : columns) header.push_back(column ? eps_label(*column) : "B");
  result.table = render_table(header, rows);
  return result;
}

std::string results_csv(int table, const std::vector<CellResult>& cells) {
  std::string out = "table,instance,algorithm,eps,cardinality,hypervolume,peak_vectors,seconds,status\n";
  for (const auto& cell : cells) {
    const bool done = cell.status == CellStatus::kCompleted;
    out += std::to_string(table) + "," + std::to_string(cell.instance) + "," + cell.algorithm + ",";
    out += (cell.eps ? eps_label(*cell.eps) : "") + ",";
    out += (done ? std::to_string(cell.cardinality) : "") + ",";
    out += (done ? format_real(cell.hypervolume) : "") + ",";
    out += (cell.status == CellStatus::kSkipped ? "" : std::to_string(cell.peak_vectors)) + ",";
    out += (cell.status == CellStatus::kSkipped ? "" : fixed(cell.seconds, 3)) + ",";
    out += status_name(cell.status) + "\n";
  }
  return out;
}

void write_reproduction(const std::filesystem::path& dir, int table, const ReproduceResult& result) {
  std::filesystem::create_directories(dir / "fronts");
  {
    std::ofstream out(dir / "results.csv");
    if (!out) throw std::runtime_error("cannot write " + (dir / "results.csv").string());
    out << results_csv(table, result.cells);
  }
  {
    std::ofstream out(dir / ("table" + std::to_string(table) + ".txt"));
    if (!out) throw std::runtime_error("cannot write table text under " + dir.string());
    out << result.table;
  }
  for (const auto& cell : result.cells) {
    if (cell.status == CellStatus::kCompleted) write_front_csv(cell.front, dir / "fronts" / front_file_name(table, cell));
  }
}

}  // namespace modp::cli
