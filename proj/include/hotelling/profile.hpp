#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <vector>

#include "hotelling/circle.hpp"

namespace hotelling {

/// Positions of n >= 2 vendors, kept sorted ascending in [0,1).
///
/// Vendor indices are positions in the sorted order, 0-based. Moving a vendor
/// produces a new profile, so an index identifies a vendor only within one
/// profile value.
template <Scalar T>
class LocationProfile {
 public:
  using scalar_type = T;

  explicit LocationProfile(std::vector<Position<T>> positions, NumericMode mode = default_mode<T>())
      : positions_(std::move(positions)), mode_(mode) {
    if (positions_.size() < 2) throw DomainError("a profile needs at least two vendors");
    if (mode_.is_exact() != is_exact_v<T>) throw DomainError("numeric mode does not match scalar type");
    std::sort(positions_.begin(), positions_.end());
  }

  static LocationProfile from_values(const std::vector<T>& xs, NumericMode mode = default_mode<T>()) {
    std::vector<Position<T>> ps;
    ps.reserve(xs.size());
    for (const auto& x : xs) ps.emplace_back(x);
    return LocationProfile(std::move(ps), mode);
  }

  static LocationProfile from_values(std::initializer_list<T> xs, NumericMode mode = default_mode<T>()) {
    return from_values(std::vector<T>(xs), mode);
  }

  std::size_t size() const { return positions_.size(); }
  const Position<T>& operator[](std::size_t k) const { return positions_.at(k); }
  std::span<const Position<T>> positions() const { return positions_; }
  const NumericMode& mode() const { return mode_; }

  std::vector<T> values() const {
    std::vector<T> out;
    out.reserve(positions_.size());
    for (const auto& p : positions_) out.push_back(p.value());
    return out;
  }

  /// The profile with vendor k moved to `to`, plus the mover's index in it.
  /// Among coincident vendors the mover takes the first slot.
  std::pair<LocationProfile, std::size_t> relocate(std::size_t k, const Position<T>& to) const {
    if (k >= size()) throw DomainError("vendor index out of range");
    std::vector<Position<T>> ps = positions_;
    ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(k));
    auto it = std::lower_bound(ps.begin(), ps.end(), to);
    const auto idx = static_cast<std::size_t>(it - ps.begin());
    ps.insert(it, to);
    return {LocationProfile(std::move(ps), mode_), idx};
  }

  /// Remaining positions (still sorted) once vendor k leaves.
  std::vector<Position<T>> without(std::size_t k) const {
    if (k >= size()) throw DomainError("vendor index out of range");
    std::vector<Position<T>> ps = positions_;
    ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(k));
    return ps;
  }

  friend bool operator==(const LocationProfile& a, const LocationProfile& b) {
    return a.positions_ == b.positions_;
  }

 private:
  std::vector<Position<T>> positions_;
  NumericMode mode_;
};

template <Scalar T>
GapVector<T> gap_vector(const LocationProfile<T>& profile) {
  return gap_vector(profile.positions());
}

}  // namespace hotelling
