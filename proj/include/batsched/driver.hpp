#pragma once

// Iterative battery-aware sequencing and design-point allocation.
//
//   L <- initial list schedule
//   repeat:
//     (cost, S) <- best window allocation for L
//     L' <- re-sequence by subtree current sums under S
//     cost <- min(cost, cost of (L', S))
//     stop when cost does not improve on the previous iteration
//     L <- L'
//
// The best configuration seen in any iteration is returned.

#include <cstddef>
#include <vector>

#include "batsched/allocation.hpp"
#include "batsched/battery_model.hpp"
#include "batsched/cost.hpp"
#include "batsched/sequencing.hpp"
#include "batsched/taskgraph.hpp"

namespace batsched {

struct IterationLog {
  Sequence sequence;
  std::vector<WindowLogEntry> windows;
  std::size_t best_window = 0;
  double window_best_sigma = 0.0;
  double window_best_delta = 0.0;
  ColumnChoice columns;  // per task, the window-best assignment

  Sequence weighted_sequence;
  double weighted_sigma = 0.0;  // the re-sequenced order under the same columns
  double weighted_delta = 0.0;

  double iteration_best_sigma = 0.0;  // min(window best, weighted)
  double best_so_far_sigma = 0.0;     // running minimum over iterations 1..k
};

struct ScheduleOptions {
  WeightMode weight_mode = WeightMode::mean_current;
  int max_iterations = 50;
  bool parallel_windows = false;
};

struct ScheduleResult {
  Sequence sequence;
  ColumnChoice columns;  // per task index
  double sigma = 0.0;
  double delta = 0.0;
  std::vector<IterationLog> iterations;
  bool converged = false;       // false when max_iterations stopped the loop
  bool alpha_exceeded = false;  // only set when params.alpha is given
};

// Uses graph.deadline(). Throws DeadlineInfeasible when it cannot be met and
// std::invalid_argument for an invalid graph or options.
ScheduleResult schedule(const TaskGraph& graph, const BatteryParams& params, const ScheduleOptions& options = {});

}  // namespace batsched
