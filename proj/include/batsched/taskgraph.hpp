#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace batsched {

// One implementation option of a task. Columns are ordered fastest /
// highest-current first.
struct DesignPoint {
  double current = 0.0;   // mA, average platform current
  double duration = 0.0;  // min

  double energy() const { return current * duration; }
  bool operator==(const DesignPoint&) const = default;
};

struct Task {
  std::string id;
  std::string label;
  std::vector<DesignPoint> design_points;

  bool operator==(const Task&) const = default;
};

struct Edge {
  std::string parent;
  std::string child;

  bool operator==(const Edge&) const = default;
};

// Precedence DAG with per-task design points and a global deadline.
//
// Construction never throws on structural problems: call validate() and treat
// a non-empty result as fatal. Algorithms assume a validated graph. Tasks are
// addressed by their index in construction order; ids break ties.
class TaskGraph {
 public:
  TaskGraph() = default;
  TaskGraph(std::vector<Task> tasks, std::vector<Edge> edges, double deadline);

  std::size_t size() const { return tasks_.size(); }
  // Number of design points per task (m); taken from the first task.
  std::size_t design_point_count() const;
  double deadline() const { return deadline_; }
  TaskGraph with_deadline(double deadline) const;

  const std::vector<Task>& tasks() const { return tasks_; }
  const Task& task(std::size_t i) const { return tasks_.at(i); }
  const DesignPoint& point(std::size_t task, std::size_t column) const {
    return tasks_[task].design_points[column];
  }
  const std::vector<Edge>& edges() const { return edges_; }

  // Throws std::invalid_argument for an unknown id.
  std::size_t index_of(std::string_view id) const;
  bool contains(std::string_view id) const;

  const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }
  const std::vector<std::size_t>& parents(std::size_t i) const { return parents_[i]; }

  // Rank of the task id in lexicographic order; the universal tie-breaker.
  std::size_t id_rank(std::size_t i) const { return id_rank_[i]; }

  // Edge order is not significant.
  bool operator==(const TaskGraph& other) const;

 private:
  std::vector<Task> tasks_;
  std::vector<Edge> edges_;
  double deadline_ = 0.0;

  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::size_t> id_rank_;
};

// Empty when the graph is usable. Reports cycles (with member ids), dangling
// or duplicate edges, design-point ordering, positivity and uniform m.
std::vector<std::string> validate(const TaskGraph& graph);

// Throws std::invalid_argument carrying every violation.
void require_valid(const TaskGraph& graph);

double mean_current(const Task& task);
double mean_energy(const Task& task);

// The energy vector: task indices by ascending mean energy, ties by id.
std::vector<std::size_t> energy_order(const TaskGraph& graph);

// Sub-graph rooted at v, v included. Sorted by task index.
std::vector<std::size_t> descendants(const TaskGraph& graph, std::size_t v);
std::vector<std::string> descendants(const TaskGraph& graph, std::string_view id);

struct CurrentExtremes {
  double min = 0.0;
  double max = 0.0;
};
CurrentExtremes current_extremes(const TaskGraph& graph);

struct EnergyBounds {
  double min = 0.0;  // every task on its last (lowest power) column
  double max = 0.0;  // every task on column 0
};
EnergyBounds energy_bounds(const TaskGraph& graph);

// True when, for every task, column 0 has the largest I×D and the last column
// the smallest. Needed for ENR to stay within [0, 1] without clamping.
bool energy_bracketing_holds(const TaskGraph& graph);

}  // namespace batsched
