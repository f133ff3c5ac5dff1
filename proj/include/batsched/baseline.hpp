#pragma once

// Comparison method (minimum-energy allocation + max{I_v, mean I(G_v)} greedy
// sequencing) and an exhaustive optimum for tiny instances.

#include <cstddef>
#include <cstdint>

#include "batsched/battery_model.hpp"
#include "batsched/cost.hpp"
#include "batsched/sequencing.hpp"
#include "batsched/taskgraph.hpp"

namespace batsched {

// Durations are discretised to this many ticks per minute for the knapsack DP.
inline constexpr int kTicksPerMinute = 10;

// Exact minimiser of Σ I·D subject to Σ D <= d (multiple-choice knapsack over
// 0.1 min ticks). Ties go to the lexicographically largest column vector in
// task-id order. Throws DeadlineInfeasible if even column 0 misses d, and
// std::invalid_argument if a duration is not on the 0.1 min grid.
ColumnChoice min_energy_allocation(const TaskGraph& graph, double deadline);

struct BaselineResult {
  ColumnChoice columns;
  Sequence sequence;
  double sigma = 0.0;
  double delta = 0.0;
  double total_energy = 0.0;
};

BaselineResult baseline_schedule(const TaskGraph& graph, const BatteryParams& params);

struct OracleLimits {
  std::uint64_t max_configurations = 1'000'000;
};

struct OracleResult {
  double best_sigma = 0.0;
  Sequence best_sequence;
  ColumnChoice best_columns;
  double worst_sigma = 0.0;
  Sequence worst_sequence;
  ColumnChoice worst_columns;
  std::uint64_t enumerated = 0;  // feasible (order, assignment) pairs evaluated
};

// Every topological order × every deadline-feasible assignment, each scored at
// its own completion time. Throws BudgetExceeded when orders × m^n exceeds the
// limit and DeadlineInfeasible when nothing meets the deadline.
OracleResult exhaustive_oracle(const TaskGraph& graph, const BatteryParams& params, const OracleLimits& limits = {});

// All topological orders, stopping early (and returning what was found) once
// `cap` orders have been produced.
std::vector<Sequence> topological_orders(const TaskGraph& graph, std::uint64_t cap);

}  // namespace batsched
