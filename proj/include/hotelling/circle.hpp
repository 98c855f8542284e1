#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "hotelling/numeric.hpp"

namespace hotelling {

/// A point on the circle of circumference 1, stored in [0,1).
template <Scalar T>
class Position {
 public:
  Position() = default;

  /// Reduces x modulo 1. Throws DomainError for non-finite input.
  explicit Position(const T& x) : value_(reduce(x)) {}

  const T& value() const { return value_; }

  friend bool operator==(const Position& a, const Position& b) { return a.value_ == b.value_; }
  friend bool operator<(const Position& a, const Position& b) { return a.value_ < b.value_; }

 private:
  static T reduce(const T& x) {
    if constexpr (!is_exact_v<T>) {
      if (!std::isfinite(x)) throw DomainError("position must be finite");
    }
    T r = x - floor_value(x);
    // -1e-17 - floor(-1e-17) rounds to 1.0 in binary floating point.
    if (r >= T(1)) r = T(0);
    return r;
  }

  T value_{0};
};

template <Scalar T>
Position<T> normalize(const T& x) {
  return Position<T>(x);
}

/// Shortest arc length between two points; always in [0, 1/2].
template <Scalar T>
T circ_distance(const Position<T>& x, const Position<T>& y) {
  const T diff = abs_value(T(x.value() - y.value()));
  const T wrap = T(1) - diff;
  return diff < wrap ? diff : wrap;
}

template <Scalar T>
bool coincident(const Position<T>& x, const Position<T>& y, const NumericMode& mode) {
  if constexpr (is_exact_v<T>) {
    return x == y;
  } else {
    return circ_distance(x, y) <= mode.coincidence_tol;
  }
}

/// Counter-clockwise arc from `from` to `to`, in [0,1). Coincident points give 0.
template <Scalar T>
T forward_arc(const Position<T>& from, const Position<T>& to) {
  T d = to.value() - from.value();
  if (d < T(0)) d += T(1);
  return d;
}

/// The n arcs between consecutive vendors of a sorted list; entry k runs from
/// vendor k to vendor k+1, and the last entry is the wrap arc back to vendor 0.
template <Scalar T>
class GapVector {
 public:
  GapVector() = default;
  explicit GapVector(std::vector<T> gaps) : gaps_(std::move(gaps)) {}

  std::size_t size() const { return gaps_.size(); }
  const T& operator[](std::size_t k) const { return gaps_[k]; }
  /// Gap after k, cyclically.
  const T& next(std::size_t k) const { return gaps_[(k + 1) % gaps_.size()]; }
  auto begin() const { return gaps_.begin(); }
  auto end() const { return gaps_.end(); }
  const std::vector<T>& values() const { return gaps_; }

  T max() const { return *std::max_element(gaps_.begin(), gaps_.end()); }
  T sum() const {
    T s{0};
    for (const auto& g : gaps_) s += g;
    return s;
  }

 private:
  std::vector<T> gaps_;
};

template <Scalar T>
GapVector<T> gap_vector(std::span<const Position<T>> sorted) {
  const std::size_t n = sorted.size();
  if (n < 2) throw DomainError("gap vector needs at least two vendors");
  std::vector<T> gaps;
  gaps.reserve(n);
  for (std::size_t k = 0; k + 1 < n; ++k) gaps.push_back(sorted[k + 1].value() - sorted[k].value());
  gaps.push_back(T(1) + sorted.front().value() - sorted.back().value());
  return GapVector<T>(std::move(gaps));
}

}  // namespace hotelling
