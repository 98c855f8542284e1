#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hotelling/market.hpp"

namespace hotelling {

// ---------------------------------------------------------------------------
// Gap condition: every two consecutive gaps together reach the longest gap.
// ---------------------------------------------------------------------------

template <Scalar T>
struct GapCheck {
  std::size_t k;  // 0-based gap index
  T gap;
  T next_gap;
  T sum;
  bool satisfied;
};

template <Scalar T>
struct ConditionReport {
  T max_gap;
  std::vector<GapCheck<T>> per_k;
  bool holds;
};

template <Scalar T>
ConditionReport<T> gap_condition(const LocationProfile<T>& profile) {
  const auto gaps = gap_vector(profile);
  const T max_gap = gaps.max();
  ConditionReport<T> report{max_gap, {}, true};
  report.per_k.reserve(gaps.size());
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    const T sum = gaps[k] + gaps.next(k);
    const bool ok = at_least(sum, max_gap, profile.mode());
    report.per_k.push_back({k, gaps[k], gaps.next(k), sum, ok});
    report.holds = report.holds && ok;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Best responses by deviation-class enumeration
// ---------------------------------------------------------------------------

enum class DeviationKind { stay, open_arc, join_cluster };

inline std::string_view to_string(DeviationKind kind) {
  switch (kind) {
    case DeviationKind::stay:
      return "stay";
    case DeviationKind::open_arc:
      return "interior-of-gap";
    case DeviationKind::join_cluster:
      return "join-stack";
  }
  return "?";
}

/// One payoff-equivalent family of relocations for a single vendor.
/// Indices refer to the clusters of the other n-1 vendors: arc j runs from
/// cluster j to cluster j+1.
template <Scalar T>
struct DeviationOption {
  DeviationKind kind;
  std::size_t index;
  T value;
  Position<T> target;
};

template <Scalar T>
struct BestResponseResult {
  std::size_t vendor;
  T current_profit;
  T best_value;
  DeviationKind best_class;
  std::size_t class_index;  // arc or cluster index; 0 for stay
  Position<T> witness;      // current position when staying
  bool improving;
};

/// Every deviation class for vendor k: interiors of the open arcs between the
/// remaining clusters, then coincidence with each remaining cluster.
template <Scalar T>
std::vector<DeviationOption<T>> deviation_options(const LocationProfile<T>& profile, std::size_t k) {
  if (k >= profile.size()) throw DomainError("vendor index out of range");
  const auto rest = profile.without(k);
  const auto clusters = decompose_clusters<T>(rest, profile.mode());
  std::vector<DeviationOption<T>> options;
  options.reserve(2 * clusters.size());
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    const T arc = clusters.arc_after(j);
    options.push_back({DeviationKind::open_arc, j, arc / T(2), Position<T>(clusters[j].position.value() + arc / T(2))});
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const T value = stack_payoff(clusters.arc_before(c), clusters.arc_after(c), clusters[c].size() + 1);
    options.push_back({DeviationKind::join_cluster, c, value, clusters[c].position});
  }
  return options;
}

/// Ties prefer staying, then the lowest arc, then the lowest cluster; only a
/// strict gain displaces the incumbent.
template <Scalar T>
BestResponseResult<T> best_response(const LocationProfile<T>& profile, std::size_t k,
                                    const ProfitVector<T>& profits) {
  if (k >= profile.size()) throw DomainError("vendor index out of range");
  BestResponseResult<T> best{k, profits[k], profits[k], DeviationKind::stay, 0, profile[k], false};
  for (const auto& opt : deviation_options(profile, k)) {
    if (strictly_greater(opt.value, best.best_value, profile.mode())) {
      best.best_value = opt.value;
      best.best_class = opt.kind;
      best.class_index = opt.index;
      best.witness = opt.target;
      best.improving = true;
    }
  }
  return best;
}

template <Scalar T>
BestResponseResult<T> best_response(const LocationProfile<T>& profile, std::size_t k) {
  return best_response(profile, k, profit_closed_form(profile));
}

template <Scalar T>
struct EquilibriumVerdict {
  bool equilibrium;
  std::vector<BestResponseResult<T>> responses;
};

/// Equilibrium by definition: no vendor has a strictly improving relocation.
template <Scalar T>
EquilibriumVerdict<T> equilibrium_oracle(const LocationProfile<T>& profile) {
  const auto profits = profit_closed_form(profile);
  EquilibriumVerdict<T> verdict{true, {}};
  verdict.responses.reserve(profile.size());
  for (std::size_t k = 0; k < profile.size(); ++k) {
    verdict.responses.push_back(best_response(profile, k, profits));
    if (verdict.responses.back().improving) verdict.equilibrium = false;
  }
  return verdict;
}

template <Scalar T>
bool is_equilibrium(const LocationProfile<T>& profile) {
  return equilibrium_oracle(profile).equilibrium;
}

template <Scalar T>
std::size_t max_stack_size(const LocationProfile<T>& profile) {
  return cluster_decompose(profile).max_size();
}

/// Profit vendor k would earn after moving to y, evaluated on the full
/// relocated profile.
template <Scalar T>
T profit_after_move(const LocationProfile<T>& profile, std::size_t k, const Position<T>& y) {
  const auto [moved, idx] = profile.relocate(k, y);
  return profit_closed_form(moved)[idx];
}

template <Scalar T>
struct GridScanResult {
  T best_value;
  Position<T> best_position;
};

/// Brute-force best response: tries y = j/steps for every j plus every
/// occupied point, re-evaluating the closed form each time. Independent of
/// the class enumeration above; only as fine as the grid.
template <Scalar T>
GridScanResult<T> best_response_grid_scan(const LocationProfile<T>& profile, std::size_t k,
                                          std::int64_t steps = 2048) {
  GridScanResult<T> out{profit_closed_form(profile)[k], profile[k]};
  auto consider = [&](const Position<T>& y) {
    const T v = profit_after_move(profile, k, y);
    if (v > out.best_value) out = {v, y};
  };
  for (std::int64_t j = 0; j < steps; ++j) consider(Position<T>(make_fraction<T>(j, steps)));
  for (const auto& p : profile.positions()) consider(p);
  return out;
}

}  // namespace hotelling
