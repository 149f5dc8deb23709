#include "modp/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace modp {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, unsigned exponent) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

std::uint64_t to_count(double x) {
  if (x >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(x);
}

}  // namespace

double hypervolume_2d(const FrontSet& front, std::span<const double> ref) {
  if (ref.size() != 2) throw std::invalid_argument("hypervolume: 2-objective only");
  if (!front.empty() && front.dimension() != 2) {
    throw std::invalid_argument("hypervolume: front dimension does not match the reference point");
  }
  // Members are sorted by decreasing first objective.
  double area = 0.0;
  double covered = ref[1];
  for (auto v : front) {
    if (v[0] <= ref[0] || v[1] <= covered) continue;
    area += (v[0] - ref[0]) * (v[1] - covered);
    covered = v[1];
  }
  return area;
}

std::uint64_t prop1_bound(double range, std::uint64_t depth, unsigned objectives) {
  if (range < 0.0) throw std::invalid_argument("prop1_bound: range must be nonnegative");
  if (objectives == 0) throw std::invalid_argument("prop1_bound: at least one objective");
  // Integers in an interval of length R·d.
  const std::uint64_t per_axis = to_count(std::floor(range * static_cast<double>(depth))) + 1;
  return saturating_pow(per_axis, objectives - 1);
}

std::uint64_t prop2_bound(double range, std::uint64_t iterations, unsigned objectives, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("prop2_bound: eps must be positive");
  if (range < 0.0) throw std::invalid_argument("prop2_bound: range must be nonnegative");
  if (objectives == 0) throw std::invalid_argument("prop2_bound: at least one objective");
  const double cells = (range * static_cast<double>(iterations) + 1.0) / eps;
  // Quotients like 4 / 0.1 land a hair above the integer they represent.
  const double nearest = std::round(cells);
  const double per_axis = std::abs(cells - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::ceil(cells);
  return saturating_pow(std::max<std::uint64_t>(to_count(per_axis), 1), objectives - 1);
}

double approx_distance(const FrontSet& approx, const FrontSet& exact) {
  if (approx.empty() || exact.empty()) throw std::invalid_argument("approx_distance: empty front");
  if (approx.dimension() != exact.dimension()) throw std::invalid_argument("approx_distance: dimension mismatch");
  double worst = 0.0;
  for (auto u : exact) {
    double best = std::numeric_limits<double>::infinity();
    for (auto v : approx) {
      double shift = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < u.size(); ++i) shift = std::max(shift, u[i] - v[i]);
      best = std::min(best, shift);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buffer[32];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, x);
    if (std::strtod(buffer, nullptr) == x) break;
  }
  return buffer;
}

std::string export_front_csv(const FrontSet& front) {
  std::string out;
  for (std::size_t i = 0; i < front.dimension(); ++i) {
    out += (i ? ",obj" : "obj") + std::to_string(i + 1);
  }
  out += '\n';
  for (auto v : front) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += format_real(v[i]);
    }
    out += '\n';
  }
  return out;
}

void write_front_csv(const FrontSet& front, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << export_front_csv(front);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

FrontSet parse_front_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("front CSV: missing header");
  const std::size_t dim = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (line.rfind("obj1", 0) != 0) throw std::invalid_argument("front CSV: header must start with obj1");
  std::vector<double> flat;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::size_t fields = 0;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view field = rest.substr(0, comma);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
        throw std::invalid_argument("front CSV: bad number on row " + std::to_string(row));
      }
      flat.push_back(value);
      ++fields;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields != dim) throw std::invalid_argument("front CSV: wrong field count on row " + std::to_string(row));
  }
  if (flat.empty()) return FrontSet(dim);
  return nd_filter(dim, flat);
}

FrontSet read_front_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_front_csv(text.str());
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string cell = c < row.size() ? row[c] : "";
      if (c) out << "  ";
      out << std::setw(static_cast<int>(width[c])) << cell;
    }
    out << '\n';
  };
  emit(header);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << '\n';
  for (const auto& row : rows) emit(row);
  return out.str();
}

}  // namespace modp
