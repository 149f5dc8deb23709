#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

namespace modp {

/**
 * A point in objective space: one real value per objective.
 *
 * All components are finite. The dimension is fixed per problem instance but
 * not encoded in the type, so binary operations check it at runtime.
 */
class ValueVector {
 public:
  ValueVector() = default;
  explicit ValueVector(std::size_t dimension, double fill = 0.0);
  explicit ValueVector(std::vector<double> components);
  explicit ValueVector(std::span<const double> components);
  ValueVector(std::initializer_list<double> components);

  std::size_t size() const { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }
  double& operator[](std::size_t i) { return components_[i]; }

  std::span<const double> components() const { return components_; }
  operator std::span<const double>() const { return components_; }

  auto begin() const { return components_.begin(); }
  auto end() const { return components_.end(); }

  friend bool operator==(const ValueVector&, const ValueVector&) = default;
  friend auto operator<=>(const ValueVector& a, const ValueVector& b) {
    return a.components_ <=> b.components_;
  }

 private:
  std::vector<double> components_;
};

/// u ⪰ v: every component of u is at least the matching component of v.
bool dominates_or_equals(std::span<const double> u, std::span<const double> v);

/// u ≻ v: u ⪰ v and u ≠ v.
bool dominates(std::span<const double> u, std::span<const double> v);

/// Neither vector dominates-or-equals the other.
bool indifferent(std::span<const double> u, std::span<const double> v);

/**
 * A set of mutually nondominated vectors of equal dimension.
 *
 * Members are stored contiguously in lexicographically descending order, which
 * is also the iteration order. For two objectives this means the first
 * objective decreases and the second increases along the front.
 */
class FrontSet {
 public:
  class const_iterator {
   public:
    using iterator_category = std::random_access_iterator_tag;
    using value_type = std::span<const double>;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = std::span<const double>;

    const_iterator() = default;
    const_iterator(const double* data, std::size_t dim) : data_(data), dim_(dim) {}

    reference operator*() const { return {data_, dim_}; }
    reference operator[](difference_type n) const { return *(*this + n); }
    const_iterator& operator++() { data_ += dim_; return *this; }
    const_iterator operator++(int) { auto t = *this; ++*this; return t; }
    const_iterator& operator--() { data_ -= dim_; return *this; }
    const_iterator operator--(int) { auto t = *this; --*this; return t; }
    const_iterator& operator+=(difference_type n) {
      data_ += n * static_cast<difference_type>(dim_);
      return *this;
    }
    const_iterator& operator-=(difference_type n) { return *this += -n; }
    friend const_iterator operator+(const_iterator it, difference_type n) { return it += n; }
    friend const_iterator operator+(difference_type n, const_iterator it) { return it += n; }
    friend const_iterator operator-(const_iterator it, difference_type n) { return it -= n; }
    friend difference_type operator-(const_iterator a, const_iterator b) {
      return a.dim_ == 0 ? 0 : (a.data_ - b.data_) / static_cast<difference_type>(a.dim_);
    }
    friend bool operator==(const_iterator a, const_iterator b) { return a.data_ == b.data_; }
    friend auto operator<=>(const_iterator a, const_iterator b) { return a.data_ <=> b.data_; }

   private:
    const double* data_ = nullptr;
    std::size_t dim_ = 0;
  };

  FrontSet() = default;
  explicit FrontSet(std::size_t dimension) : dim_(dimension) {}

  /// The singleton {0⃗}.
  static FrontSet zero(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  ValueVector vector(std::size_t i) const { return ValueVector((*this)[i]); }
  std::vector<ValueVector> vectors() const;
  bool contains(std::span<const double> v) const;

  /// Flat row-major storage, `size() * dimension()` values.
  std::span<const double> coordinates() const { return coords_; }

  const_iterator begin() const { return {coords_.data(), dim_}; }
  const_iterator end() const { return {coords_.data() + coords_.size(), dim_}; }

  friend bool operator==(const FrontSet&, const FrontSet&) = default;

 private:
  friend FrontSet nd_filter(std::size_t, std::span<const double>);
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// ND(X): the nondominated subset of X with duplicates collapsed.
/// Throws std::invalid_argument when dimensions differ.
FrontSet nd_filter(std::span<const ValueVector> vectors);

/// ND over a flat row-major buffer of `coords.size() / dimension` vectors.
FrontSet nd_filter(std::size_t dimension, std::span<const double> coords);

/// nd_filter(F ∪ {v}).
FrontSet nd_insert(const FrontSet& front, std::span<const double> v);

/// eps · nearestInteger(x / eps), halves rounded away from zero. Never returns -0.
double round_to_grid(double x, double eps);

/// Component-wise round_to_grid. Throws std::invalid_argument unless eps > 0.
ValueVector round_vector(std::span<const double> v, double eps);

/// Set image of round_vector, deduplicated and sorted lexicographically descending.
std::vector<ValueVector> round_set(std::span<const ValueVector> vectors, double eps);

}  // namespace modp
