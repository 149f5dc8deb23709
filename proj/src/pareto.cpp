#include "modp/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace modp {

namespace {

void check_finite(std::span<const double> components) {
  for (double x : components) {
    if (!std::isfinite(x)) throw std::invalid_argument("ValueVector components must be finite");
  }
}

void check_same_dimension(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()));
  }
}

bool lex_greater(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

ValueVector::ValueVector(std::size_t dimension, double fill) : components_(dimension, fill) {
  check_finite(components_);
}

ValueVector::ValueVector(std::vector<double> components) : components_(std::move(components)) {
  check_finite(components_);
}

ValueVector::ValueVector(std::span<const double> components)
    : components_(components.begin(), components.end()) {
  check_finite(components_);
}

ValueVector::ValueVector(std::initializer_list<double> components) : components_(components) {
  check_finite(components_);
}

bool dominates_or_equals(std::span<const double> u, std::span<const double> v) {
  check_same_dimension(u, v);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < v[i]) return false;
  }
  return true;
}

bool dominates(std::span<const double> u, std::span<const double> v) {
  return dominates_or_equals(u, v) && !std::equal(u.begin(), u.end(), v.begin());
}

bool indifferent(std::span<const double> u, std::span<const double> v) {
  return !dominates_or_equals(u, v) && !dominates_or_equals(v, u);
}

FrontSet FrontSet::zero(std::size_t dimension) {
  std::vector<double> origin(dimension, 0.0);
  return nd_filter(dimension, origin);
}

std::vector<ValueVector> FrontSet::vectors() const {
  std::vector<ValueVector> out;
  out.reserve(size());
  for (auto v : *this) out.emplace_back(v);
  return out;
}

bool FrontSet::contains(std::span<const double> v) const {
  if (v.size() != dim_) return false;
  // Members are sorted descending, so binary search with the reversed order.
  auto it = std::lower_bound(begin(), end(), v, [](std::span<const double> a, std::span<const double> b) {
    return lex_greater(a, b);
  });
  return it != end() && std::equal(v.begin(), v.end(), (*it).begin());
}

FrontSet nd_filter(std::size_t dimension, std::span<const double> coords) {
  if (dimension == 0) {
    if (!coords.empty()) throw std::invalid_argument("nd_filter: zero dimension with data");
    return FrontSet{};
  }
  if (coords.size() % dimension != 0) {
    throw std::invalid_argument("nd_filter: buffer length is not a multiple of the dimension");
  }
  const std::size_t count = coords.size() / dimension;
  auto at = [&](std::size_t i) { return coords.subspan(i * dimension, dimension); };

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_greater(at(a), at(b)); });

  // After the descending sort a vector can only be dominated by an earlier one,
  // and duplicates are adjacent.
  FrontSet out(dimension);
  std::vector<std::size_t> kept;
  if (dimension == 1) {
    if (count > 0) kept.push_back(order.front());
  } else if (dimension == 2) {
    double best_second = -std::numeric_limits<double>::infinity();
    for (std::size_t idx : order) {
      if (at(idx)[1] > best_second) {
        kept.push_back(idx);
        best_second = at(idx)[1];
      }
    }
  } else {
    for (std::size_t idx : order) {
      auto v = at(idx);
      bool covered = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
        auto u = at(k);
        for (std::size_t i = 0; i < dimension; ++i) {
          if (u[i] < v[i]) return false;
        }
        return true;
      });
      if (!covered) kept.push_back(idx);
    }
  }

  out.coords_.reserve(kept.size() * dimension);
  for (std::size_t idx : kept) {
    for (double x : at(idx)) out.coords_.push_back(x + 0.0);
  }
  return out;
}

FrontSet nd_filter(std::span<const ValueVector> vectors) {
  if (vectors.empty()) return FrontSet{};
  const std::size_t dimension = vectors.front().size();
  std::vector<double> flat;
  flat.reserve(vectors.size() * dimension);
  for (const auto& v : vectors) {
    if (v.size() != dimension) throw std::invalid_argument("nd_filter: mixed dimensions");
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return nd_filter(dimension, flat);
}

FrontSet nd_insert(const FrontSet& front, std::span<const double> v) {
  if (front.dimension() != 0 && front.dimension() != v.size()) {
    throw std::invalid_argument("nd_insert: dimension mismatch");
  }
  for (auto member : front) {
    if (dominates_or_equals(member, v)) return front;
  }
  std::vector<double> flat;
  flat.reserve(front.coordinates().size() + v.size());
  for (auto member : front) {
    if (!dominates(v, member)) flat.insert(flat.end(), member.begin(), member.end());
  }
  flat.insert(flat.end(), v.begin(), v.end());
  return nd_filter(v.size(), flat);
}

double round_to_grid(double x, double eps) {
  return std::round(x / eps) * eps + 0.0;
}

ValueVector round_vector(std::span<const double> v, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("rounding precision must be positive");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = round_to_grid(v[i], eps);
  return ValueVector(std::move(out));
}

std::vector<ValueVector> round_set(std::span<const ValueVector> vectors, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("rounding precision must be positive");
  std::vector<ValueVector> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) out.push_back(round_vector(v, eps));
  std::sort(out.begin(), out.end(), std::greater<>{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace modp
