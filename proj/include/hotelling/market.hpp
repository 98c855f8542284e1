#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "hotelling/profile.hpp"

namespace hotelling {

// ---------------------------------------------------------------------------
// Clusters
// ---------------------------------------------------------------------------

template <Scalar T>
struct Cluster {
  Position<T> position;
  std::vector<std::size_t> members;  // vendor indices, ascending

  std::size_t size() const { return members.size(); }
};

/// Maximal stacks of coincident vendors, in circular order.
template <Scalar T>
class ClusterDecomposition {
 public:
  explicit ClusterDecomposition(std::vector<Cluster<T>> clusters) : clusters_(std::move(clusters)) {}

  std::size_t size() const { return clusters_.size(); }
  const Cluster<T>& operator[](std::size_t c) const { return clusters_[c]; }
  auto begin() const { return clusters_.begin(); }
  auto end() const { return clusters_.end(); }

  /// Free arc from cluster c to the next cluster. A lone cluster sees the
  /// whole circle on either side.
  T arc_after(std::size_t c) const {
    if (clusters_.size() == 1) return T(1);
    return forward_arc(clusters_[c].position, clusters_[(c + 1) % clusters_.size()].position);
  }
  T arc_before(std::size_t c) const { return arc_after((c + clusters_.size() - 1) % clusters_.size()); }

  std::size_t max_size() const {
    std::size_t m = 0;
    for (const auto& c : clusters_) m = std::max(m, c.size());
    return m;
  }

  /// Index of the cluster containing vendor k.
  std::size_t cluster_of(std::size_t k) const {
    for (std::size_t c = 0; c < clusters_.size(); ++c)
      for (auto m : clusters_[c].members)
        if (m == k) return c;
    throw DomainError("vendor index out of range");
  }

 private:
  std::vector<Cluster<T>> clusters_;
};

/// Groups a sorted, nonempty position list into stacks. Works for a single
/// vendor so that best-response code can decompose the n-1 remaining vendors.
template <Scalar T>
ClusterDecomposition<T> decompose_clusters(std::span<const Position<T>> sorted, const NumericMode& mode) {
  if (sorted.empty()) throw DomainError("cannot decompose an empty vendor set");
  std::vector<Cluster<T>> clusters;
  clusters.push_back({sorted[0], {0}});
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (coincident(sorted[k - 1], sorted[k], mode)) {
      clusters.back().members.push_back(k);
    } else {
      clusters.push_back({sorted[k], {k}});
    }
  }
  // In floating mode a stack can straddle 0; fold the tail into the head.
  if (clusters.size() > 1 && coincident(sorted.back(), sorted.front(), mode)) {
    auto& head = clusters.front();
    head.members.insert(head.members.begin(), clusters.back().members.begin(), clusters.back().members.end());
    std::sort(head.members.begin(), head.members.end());
    clusters.pop_back();
  }
  return ClusterDecomposition<T>(std::move(clusters));
}

template <Scalar T>
ClusterDecomposition<T> cluster_decompose(const LocationProfile<T>& profile) {
  return decompose_clusters(profile.positions(), profile.mode());
}

// ---------------------------------------------------------------------------
// Profits
// ---------------------------------------------------------------------------

template <Scalar T>
class ProfitVector {
 public:
  explicit ProfitVector(std::vector<T> profits) : profits_(std::move(profits)) {}

  std::size_t size() const { return profits_.size(); }
  const T& operator[](std::size_t k) const { return profits_[k]; }
  auto begin() const { return profits_.begin(); }
  auto end() const { return profits_.end(); }
  const std::vector<T>& values() const { return profits_; }

  T sum() const {
    T s{0};
    for (const auto& p : profits_) s += p;
    return s;
  }
  T min() const { return *std::min_element(profits_.begin(), profits_.end()); }

 private:
  std::vector<T> profits_;
};

/// Each member of a stack of size i with free arcs L and R earns (L+R)/(2i).
template <Scalar T>
T stack_payoff(const T& left, const T& right, std::size_t stack_size) {
  return (left + right) / T(2 * static_cast<std::int64_t>(stack_size));
}

template <Scalar T>
ProfitVector<T> profit_closed_form(const LocationProfile<T>& profile) {
  const auto clusters = cluster_decompose(profile);
  std::vector<T> profits(profile.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const T share = stack_payoff(clusters.arc_before(c), clusters.arc_after(c), clusters[c].size());
    for (auto k : clusters[c].members) profits[k] = share;
  }
  return ProfitVector<T>(std::move(profits));
}

// ---------------------------------------------------------------------------
// Consumer split (the density definition)
// ---------------------------------------------------------------------------

/// Vendors nearest to the consumer at y.
template <Scalar T>
std::vector<std::size_t> consumer_set(const LocationProfile<T>& profile, const Position<T>& y) {
  const auto& mode = profile.mode();
  std::vector<T> dist;
  dist.reserve(profile.size());
  for (const auto& p : profile.positions()) dist.push_back(circ_distance(p, y));
  const T best = *std::min_element(dist.begin(), dist.end());
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    bool tie;
    if constexpr (is_exact_v<T>) {
      tie = dist[k] == best;
    } else {
      tie = dist[k] <= best + mode.coincidence_tol;
    }
    if (tie) out.push_back(k);
  }
  return out;
}

template <Scalar T>
T density_rho(const LocationProfile<T>& profile, std::size_t k, const Position<T>& y) {
  if (k >= profile.size()) throw DomainError("vendor index out of range");
  const auto s = consumer_set(profile, y);
  if (std::find(s.begin(), s.end(), k) == s.end()) return T(0);
  return T(1) / T(static_cast<std::int64_t>(s.size()));
}

namespace detail {

// tallies[k][l] counts samples where vendor k is among l nearest vendors.
using SplitTallies = std::vector<std::vector<std::uint64_t>>;

inline void tally_sample(SplitTallies& tallies, const std::vector<std::size_t>& nearest) {
  for (auto k : nearest) ++tallies[k][nearest.size()];
}

// Exact midpoint sampling on an integer lattice of spacing 1/D, where D is a
// common denominator of every position and every sample point. Returns false
// if D does not fit comfortably in 64 bits.
inline bool tally_on_lattice(const LocationProfile<Rational>& profile, std::uint64_t resolution,
                             SplitTallies& tallies) {
  BigInt common = 2 * BigInt(resolution);
  for (const auto& p : profile.positions()) {
    const BigInt den = boost::multiprecision::denominator(p.value());
    common = boost::multiprecision::lcm(common, den);
  }
  if (common > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) return false;
  const auto lattice = common.convert_to<std::int64_t>();

  std::vector<std::int64_t> pts;
  pts.reserve(profile.size());
  for (const auto& p : profile.positions()) {
    const BigInt num = boost::multiprecision::numerator(p.value());
    const BigInt den = boost::multiprecision::denominator(p.value());
    pts.push_back((num * (common / den)).convert_to<std::int64_t>());
  }
  const std::int64_t step = lattice / (2 * static_cast<std::int64_t>(resolution));

  std::vector<std::int64_t> dist(pts.size());
  std::vector<std::size_t> nearest;
  nearest.reserve(pts.size());
  for (std::uint64_t j = 0; j < resolution; ++j) {
    const std::int64_t y = (2 * static_cast<std::int64_t>(j) + 1) * step;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::int64_t d = pts[k] > y ? pts[k] - y : y - pts[k];
      if (lattice - d < d) d = lattice - d;
      dist[k] = d;
      best = std::min(best, d);
    }
    nearest.clear();
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (dist[k] == best) nearest.push_back(k);
    tally_sample(tallies, nearest);
  }
  return true;
}

}  // namespace detail

/// Midpoint-rule evaluation of the consumer-split integral with M samples at
/// y_j = (j + 1/2)/M. Each sample hands out exactly 1/M, split equally among
/// the nearest vendors, so the result is conserved at any resolution.
/// Entry error against the closed form is at most 2n/M.
template <Scalar T>
ProfitVector<T> profit_integral_oracle(const LocationProfile<T>& profile, std::uint64_t resolution) {
  if (resolution == 0) throw DomainError("oracle resolution must be positive");
  const std::size_t n = profile.size();
  detail::SplitTallies tallies(n, std::vector<std::uint64_t>(n + 1, 0));

  bool done = false;
  if constexpr (is_exact_v<T>) done = detail::tally_on_lattice(profile, resolution, tallies);
  if (!done) {
    const T denom = T(2 * static_cast<std::int64_t>(resolution));
    for (std::uint64_t j = 0; j < resolution; ++j) {
      const Position<T> y(T(2 * static_cast<std::int64_t>(j) + 1) / denom);
      detail::tally_sample(tallies, consumer_set(profile, y));
    }
  }

  std::vector<T> profits(n, T(0));
  const T m = T(static_cast<std::int64_t>(resolution));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 1; l <= n; ++l) {
      if (tallies[k][l] == 0) continue;
      profits[k] += T(static_cast<std::int64_t>(tallies[k][l])) / (T(static_cast<std::int64_t>(l)) * m);
    }
  }
  return ProfitVector<T>(std::move(profits));
}

}  // namespace hotelling
