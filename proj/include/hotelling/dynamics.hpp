#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <variant>
#include <vector>

#include "hotelling/generators.hpp"

namespace hotelling {

/// Moves vendor k to its deterministic best-response witness when that is a
/// strict improvement; otherwise returns the profile unchanged.
template <Scalar T>
LocationProfile<T> best_response_step(const LocationProfile<T>& profile, std::size_t k) {
  const auto br = best_response(profile, k);
  if (!br.improving) return profile;
  return profile.relocate(k, br.witness).first;
}

enum class ScheduleKind { round_robin, random };

struct Schedule {
  ScheduleKind kind = ScheduleKind::round_robin;
  std::uint64_t seed = 0;  // random schedule only

  static Schedule round_robin() { return {ScheduleKind::round_robin, 0}; }
  static Schedule random(std::uint64_t seed) { return {ScheduleKind::random, seed}; }
};

template <Scalar T>
struct MoveRecord {
  std::uint64_t step;  // attempt counter at which the move happened
  std::size_t mover;   // index in the pre-move profile
  Position<T> from;
  Position<T> to;
  T profit_before;
  T profit_after;
};

struct Converged {
  std::uint64_t moves;
  std::uint64_t steps;
};

struct Cycle {
  std::uint64_t period;       // in moves
  std::uint64_t first_visit;  // move count at which the repeated state first occurred
};

struct BudgetExhausted {};

using DynamicsOutcome = std::variant<Converged, Cycle, BudgetExhausted>;

template <Scalar T>
struct DynamicsTrace {
  Schedule schedule;
  LocationProfile<T> start;
  LocationProfile<T> final_profile;
  std::vector<MoveRecord<T>> moves;
  DynamicsOutcome outcome;
};

/// Sequential best-response dynamics. A vendor index is drawn per step
/// (cyclically or uniformly at random); the run converges once every vendor
/// has been offered a move since the last relocation and none took it. A
/// canonical state seen before ends the run as a cycle.
template <Scalar T>
DynamicsTrace<T> run_dynamics(const LocationProfile<T>& start, Schedule schedule, std::uint64_t max_steps) {
  if (max_steps == 0) throw DomainError("max_steps must be positive");
  const std::size_t n = start.size();
  std::mt19937_64 rng(schedule.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  LocationProfile<T> state = start;
  std::vector<MoveRecord<T>> moves;
  std::map<CanonicalProfile<T>, std::uint64_t> seen;
  seen.emplace(canonicalize(state), 0);
  std::vector<bool> idle(n, false);
  std::size_t idle_count = 0;

  for (std::uint64_t step = 0; step < max_steps; ++step) {
    const std::size_t k = schedule.kind == ScheduleKind::round_robin ? step % n : pick(rng);
    const auto br = best_response(state, k);
    if (!br.improving) {
      if (!idle[k]) {
        idle[k] = true;
        ++idle_count;
      }
      if (idle_count == n) {
        const Converged done{moves.size(), step + 1};
        return {schedule, start, state, std::move(moves), done};
      }
      continue;
    }
    const auto [next, idx] = state.relocate(k, br.witness);
    moves.push_back({step, k, state[k], br.witness, br.current_profit, profit_closed_form(next)[idx]});
    state = next;
    std::fill(idle.begin(), idle.end(), false);
    idle_count = 0;

    const auto [it, fresh] = seen.emplace(canonicalize(state), moves.size());
    if (!fresh) {
      const Cycle cycle{moves.size() - it->second, it->second};
      return {schedule, start, state, std::move(moves), cycle};
    }
  }
  return {schedule, start, state, std::move(moves), BudgetExhausted{}};
}

}  // namespace hotelling
