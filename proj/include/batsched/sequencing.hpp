#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "batsched/taskgraph.hpp"

namespace batsched {

// A total execution order L(1..n): task indices, parents before children.
using Sequence = std::vector<std::size_t>;

// Initial sequencing weight per task.
enum class WeightMode {
  mean_current,  // reproduces the published initial sequence for G3
  mean_energy,
};

// List scheduling: repeatedly take the ready task with the largest weight
// (ties to the smaller id). `weight` is indexed by task.
Sequence list_schedule(const TaskGraph& graph, std::span<const double> weight);

Sequence sequence_dec_energy(const TaskGraph& graph, WeightMode mode = WeightMode::mean_current);

// w(v) = Σ chosen current over the sub-graph rooted at v.
Sequence weighted_sequence(const TaskGraph& graph, std::span<const double> chosen_current);

// w(v) = max(chosen current of v, mean chosen current over the sub-graph rooted at v).
Sequence baseline_sequence(const TaskGraph& graph, std::span<const double> chosen_current);

bool is_topological_order(const TaskGraph& graph, const Sequence& sequence);

std::vector<std::string> sequence_ids(const TaskGraph& graph, const Sequence& sequence);

}  // namespace batsched
