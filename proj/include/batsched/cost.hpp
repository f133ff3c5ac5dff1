#pragma once

// Schedule -> discharge profile -> battery cost.

#include <cstddef>
#include <vector>

#include "batsched/battery_model.hpp"
#include "batsched/sequencing.hpp"
#include "batsched/taskgraph.hpp"

namespace batsched {

// Chosen design-point column for each task, indexed by task (not position).
using ColumnChoice = std::vector<std::size_t>;

// One interval per task in sequence order, back-to-back from t = 0.
DischargeProfile build_profile(const TaskGraph& graph, const Sequence& sequence, const ColumnChoice& columns);

// σ at the schedule's completion time, paired with that time.
ChargeAtCompletion calculate_battery_cost(const TaskGraph& graph, const Sequence& sequence,
                                          const ColumnChoice& columns, const BatteryParams& params);

double total_duration(const TaskGraph& graph, const ColumnChoice& columns);
double total_energy(const TaskGraph& graph, const ColumnChoice& columns);
std::vector<double> chosen_currents(const TaskGraph& graph, const ColumnChoice& columns);

}  // namespace batsched
