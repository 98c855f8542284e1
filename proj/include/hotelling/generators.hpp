#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "hotelling/equilibrium.hpp"

namespace hotelling {

// ---------------------------------------------------------------------------
// Canonical form under rotation and reflection
// ---------------------------------------------------------------------------

template <Scalar T>
bool lex_less(const LocationProfile<T>& a, const LocationProfile<T>& b) {
  const auto pa = a.positions();
  const auto pb = b.positions();
  return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
}

/// A profile with its first vendor at 0 that is the lexicographic minimum
/// over all rotations placing some vendor at 0, in both orientations.
template <Scalar T>
class CanonicalProfile {
 public:
  const LocationProfile<T>& profile() const { return profile_; }
  std::size_t size() const { return profile_.size(); }

  friend bool operator==(const CanonicalProfile& a, const CanonicalProfile& b) { return a.profile_ == b.profile_; }
  friend bool operator<(const CanonicalProfile& a, const CanonicalProfile& b) { return lex_less(a.profile_, b.profile_); }

 private:
  explicit CanonicalProfile(LocationProfile<T> p) : profile_(std::move(p)) {}
  template <Scalar U>
  friend CanonicalProfile<U> canonicalize(const LocationProfile<U>& profile);

  LocationProfile<T> profile_;
};

template <Scalar T>
CanonicalProfile<T> canonicalize(const LocationProfile<T>& profile) {
  const auto xs = profile.values();
  std::optional<LocationProfile<T>> best;
  auto consider = [&](const std::vector<T>& pts) {
    for (const auto& anchor : pts) {
      std::vector<T> shifted;
      shifted.reserve(pts.size());
      for (const auto& x : pts) shifted.push_back(x - anchor);
      auto candidate = LocationProfile<T>::from_values(shifted, profile.mode());
      if (!best || lex_less(candidate, *best)) best = std::move(candidate);
    }
  };
  consider(xs);
  std::vector<T> mirrored;
  mirrored.reserve(xs.size());
  for (const auto& x : xs) mirrored.push_back(-x);
  consider(mirrored);
  return CanonicalProfile<T>(std::move(*best));
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

template <Scalar T>
LocationProfile<T> equal_spacing(std::size_t n) {
  if (n < 2) throw DomainError("equal spacing needs n >= 2");
  std::vector<T> xs;
  for (std::size_t k = 0; k < n; ++k)
    xs.push_back(make_fraction<T>(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n)));
  return LocationProfile<T>::from_values(xs);
}

/// Two vendors on each of m equally spaced points (n = 2m).
template <Scalar T>
LocationProfile<T> paired_configuration(std::size_t m) {
  if (m < 2) throw DomainError("paired configuration needs m >= 2");
  std::vector<T> xs;
  for (std::size_t k = 0; k < m; ++k) {
    const T x = make_fraction<T>(static_cast<std::int64_t>(k), static_cast<std::int64_t>(m));
    xs.push_back(x);
    xs.push_back(x);
  }
  return LocationProfile<T>::from_values(xs);
}

// ---------------------------------------------------------------------------
// Random sampling
// ---------------------------------------------------------------------------

inline constexpr std::int64_t kDefaultSampleGrid = 360;

/// n independent uniform positions. Exact mode draws from the grid
/// {0, 1/grid, ..., (grid-1)/grid}; floating mode draws from [0,1).
template <Scalar T>
LocationProfile<T> sample_random(std::size_t n, std::uint64_t seed, std::int64_t grid = kDefaultSampleGrid) {
  if (n < 2) throw DomainError("sampling needs n >= 2");
  std::mt19937_64 rng(seed);
  std::vector<T> xs;
  xs.reserve(n);
  if constexpr (is_exact_v<T>) {
    if (grid < 1) throw DomainError("grid denominator must be positive");
    std::uniform_int_distribution<std::int64_t> pick(0, grid - 1);
    for (std::size_t k = 0; k < n; ++k) xs.push_back(Rational(pick(rng), grid));
  } else {
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) xs.push_back(pick(rng));
  }
  return LocationProfile<T>::from_values(xs);
}

/// Uniform point of the gap simplex via normalized exponential draws,
/// integrated into positions starting at 0. Exact mode keeps the draws as
/// exact binary fractions, so the gaps sum to exactly 1.
template <Scalar T>
LocationProfile<T> sample_gap_simplex(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<T> weights;
  weights.reserve(n);
  T total{0};
  for (std::size_t k = 0; k < n; ++k) {
    double e = draw(rng);
    while (e <= 0.0) e = draw(rng);
    weights.push_back(T(e));
    total += weights.back();
  }
  std::vector<T> xs;
  xs.reserve(n);
  T acc{0};
  for (std::size_t k = 0; k < n; ++k) {
    xs.push_back(acc / total);
    acc += weights[k];
  }
  return LocationProfile<T>::from_values(xs);
}

template <Scalar T>
struct SampleOutcome {
  std::optional<LocationProfile<T>> profile;  // empty when tries ran out
  std::uint64_t tries = 0;

  bool exhausted() const { return !profile.has_value(); }
  double acceptance_rate() const { return tries == 0 ? 0.0 : (profile ? 1.0 : 0.0) / static_cast<double>(tries); }
};

/// Rejection-samples the gap simplex until the gap condition holds.
template <Scalar T>
SampleOutcome<T> sample_equilibrium(std::size_t n, std::uint64_t seed, std::uint64_t max_tries) {
  if (n < 2) throw DomainError("sampling needs n >= 2");
  std::mt19937_64 rng(seed);
  SampleOutcome<T> out;
  while (out.tries < max_tries) {
    ++out.tries;
    auto candidate = sample_gap_simplex<T>(n, rng);
    if (gap_condition(candidate).holds) {
      out.profile = std::move(candidate);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive grid enumeration
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// C(n+m-1, n), saturating at UINT64_MAX.
inline std::uint64_t grid_candidate_count(std::size_t n, std::size_t m) {
  const BigInt c = [&] {
    BigInt r = 1;
    for (std::size_t i = 1; i <= n; ++i) r = r * (m - 1 + i) / i;
    return r;
  }();
  if (c > BigInt(std::numeric_limits<std::uint64_t>::max())) return std::numeric_limits<std::uint64_t>::max();
  return c.convert_to<std::uint64_t>();
}

/// Calls fn on every profile of n vendors on the grid {0, 1/m, ...} with the
/// first vendor pinned at 0 (each multiset once).
template <Scalar T>
void for_each_grid_profile(std::size_t n, std::size_t m, const std::function<void(const LocationProfile<T>&)>& fn) {
  if (n < 2 || m < 1) throw DomainError("grid enumeration needs n >= 2 and m >= 1");
  std::vector<std::size_t> idx(n, 0);
  const auto den = static_cast<std::int64_t>(m);
  while (true) {
    std::vector<T> xs;
    xs.reserve(n);
    for (auto i : idx) xs.push_back(make_fraction<T>(static_cast<std::int64_t>(i), den));
    fn(LocationProfile<T>::from_values(xs));
    // Next nondecreasing sequence in idx[1..n-1].
    std::size_t pos = n - 1;
    while (pos >= 1 && idx[pos] == m - 1) --pos;
    if (pos == 0) break;
    const std::size_t v = idx[pos] + 1;
    for (std::size_t j = pos; j < n; ++j) idx[j] = v;
  }
}

template <Scalar T>
struct EnumerationOutcome {
  std::vector<CanonicalProfile<T>> equilibria;  // sorted, deduplicated
  std::uint64_t candidate_count = 0;
  bool refused = false;
};

template <Scalar T>
EnumerationOutcome<T> grid_enumerate_equilibria(std::size_t n, std::size_t m,
                                                std::uint64_t budget = kDefaultEnumerationBudget) {
  static_assert(is_exact_v<T>, "grid enumeration requires exact arithmetic");
  if (n < 2 || m < 2) throw DomainError("grid enumeration needs n >= 2 and m >= 2");
  EnumerationOutcome<T> out;
  out.candidate_count = grid_candidate_count(n, m);
  if (out.candidate_count > budget) {
    out.refused = true;
    return out;
  }
  std::set<CanonicalProfile<T>> seen;
  for_each_grid_profile<T>(n, m, [&](const LocationProfile<T>& p) {
    if (gap_condition(p).holds) seen.insert(canonicalize(p));
  });
  out.equilibria.assign(seen.begin(), seen.end());
  return out;
}

}  // namespace hotelling
