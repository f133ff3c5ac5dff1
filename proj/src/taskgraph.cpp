#include "batsched/taskgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace batsched {

TaskGraph::TaskGraph(std::vector<Task> tasks, std::vector<Edge> edges, double deadline)
    : tasks_(std::move(tasks)), edges_(std::move(edges)), deadline_(deadline) {
  const std::size_t n = tasks_.size();
  for (std::size_t i = 0; i < n; ++i) index_.try_emplace(tasks_[i].id, i);

  children_.assign(n, {});
  parents_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges_) {
    auto p = index_.find(e.parent);
    auto c = index_.find(e.child);
    if (p == index_.end() || c == index_.end() || p->second == c->second) continue;
    if (!seen.emplace(p->second, c->second).second) continue;
    children_[p->second].push_back(c->second);
    parents_[c->second].push_back(p->second);
  }

  std::vector<std::size_t> by_id(n);
  std::iota(by_id.begin(), by_id.end(), std::size_t{0});
  std::stable_sort(by_id.begin(), by_id.end(),
                   [&](std::size_t a, std::size_t b) { return tasks_[a].id < tasks_[b].id; });
  id_rank_.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) id_rank_[by_id[r]] = r;
}

std::size_t TaskGraph::design_point_count() const {
  return tasks_.empty() ? 0 : tasks_.front().design_points.size();
}

TaskGraph TaskGraph::with_deadline(double deadline) const {
  TaskGraph copy = *this;
  copy.deadline_ = deadline;
  return copy;
}

std::size_t TaskGraph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw std::invalid_argument("unknown task id '" + std::string(id) + "'");
  return it->second;
}

bool TaskGraph::contains(std::string_view id) const { return index_.count(std::string(id)) != 0; }

namespace {

// Returns the ids on one cycle (first vertex repeated at the end), or empty.
std::vector<std::string> find_cycle(const TaskGraph& g) {
  enum class Mark { white, grey, black };
  const std::size_t n = g.size();
  std::vector<Mark> mark(n, Mark::white);
  std::vector<std::size_t> parent(n, n);

  for (std::size_t root = 0; root < n; ++root) {
    if (mark[root] != Mark::white) continue;
    // Iterative DFS: (vertex, next child slot).
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::grey;
    while (!stack.empty()) {
      auto& [v, slot] = stack.back();
      const auto& kids = g.children(v);
      if (slot == kids.size()) {
        mark[v] = Mark::black;
        stack.pop_back();
        continue;
      }
      const std::size_t w = kids[slot++];
      if (mark[w] == Mark::grey) {
        std::vector<std::string> cycle{g.task(w).id};
        for (std::size_t u = v; u != w; u = parent[u]) cycle.push_back(g.task(u).id);
        std::reverse(cycle.begin() + 1, cycle.end());
        cycle.push_back(g.task(w).id);
        return cycle;
      }
      if (mark[w] == Mark::white) {
        mark[w] = Mark::grey;
        parent[w] = v;
        stack.emplace_back(w, 0);
      }
    }
  }
  return {};
}

}  // namespace

std::vector<std::string> validate(const TaskGraph& g) {
  std::vector<std::string> out;
  if (g.size() == 0) out.emplace_back("graph has no tasks");
  if (!std::isfinite(g.deadline()) || g.deadline() <= 0.0) out.emplace_back("deadline must be positive");

  std::set<std::string> ids;
  for (const auto& t : g.tasks()) {
    if (t.id.empty()) out.emplace_back("task with empty id");
    if (!ids.insert(t.id).second) out.push_back("duplicate task id '" + t.id + "'");
  }

  const std::size_t m = g.design_point_count();
  for (const auto& t : g.tasks()) {
    const auto& dps = t.design_points;
    if (dps.empty()) {
      out.push_back("task '" + t.id + "' has no design points");
      continue;
    }
    if (dps.size() != m) {
      std::ostringstream os;
      os << "task '" << t.id << "' has " << dps.size() << " design points, expected " << m;
      out.push_back(os.str());
    }
    for (std::size_t j = 0; j < dps.size(); ++j) {
      const auto& dp = dps[j];
      if (!std::isfinite(dp.current) || dp.current <= 0.0 || !std::isfinite(dp.duration) || dp.duration <= 0.0) {
        std::ostringstream os;
        os << "task '" << t.id << "' design point " << j + 1 << " must have positive current and duration";
        out.push_back(os.str());
      }
      if (j == 0) continue;
      if (!(dps[j - 1].duration < dp.duration)) {
        std::ostringstream os;
        os << "task '" << t.id << "' durations not strictly ascending at design point " << j + 1;
        out.push_back(os.str());
      }
      if (!(dps[j - 1].current > dp.current)) {
        std::ostringstream os;
        os << "task '" << t.id << "' currents not strictly descending at design point " << j + 1;
        out.push_back(os.str());
      }
    }
  }

  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const auto& e : g.edges()) {
    if (!g.contains(e.parent)) out.push_back("edge references unknown parent '" + e.parent + "'");
    if (!g.contains(e.child)) out.push_back("edge references unknown child '" + e.child + "'");
    if (e.parent == e.child) out.push_back("self-loop on '" + e.parent + "'");
    if (!seen_edges.emplace(e.parent, e.child).second)
      out.push_back("duplicate edge '" + e.parent + "' -> '" + e.child + "'");
  }

  if (auto cycle = find_cycle(g); !cycle.empty()) {
    std::string msg = "cycle:";
    for (std::size_t i = 0; i < cycle.size(); ++i) msg += (i ? " -> " : " ") + cycle[i];
    out.push_back(msg);
  }
  return out;
}

void require_valid(const TaskGraph& graph) {
  auto violations = validate(graph);
  if (violations.empty()) return;
  std::string msg = "invalid task graph:";
  for (const auto& v : violations) msg += "\n  " + v;
  throw std::invalid_argument(msg);
}

double mean_current(const Task& task) {
  double sum = 0.0;
  for (const auto& dp : task.design_points) sum += dp.current;
  return sum / static_cast<double>(task.design_points.size());
}

double mean_energy(const Task& task) {
  double sum = 0.0;
  for (const auto& dp : task.design_points) sum += dp.energy();
  return sum / static_cast<double>(task.design_points.size());
}

std::vector<std::size_t> energy_order(const TaskGraph& g) {
  std::vector<double> energy(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) energy[i] = mean_energy(g.task(i));
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (energy[a] != energy[b]) return energy[a] < energy[b];
    return g.id_rank(a) < g.id_rank(b);
  });
  return order;
}

std::vector<std::size_t> descendants(const TaskGraph& g, std::size_t v) {
  if (v >= g.size()) throw std::invalid_argument("task index out of range");
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> stack{v};
  seen[v] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t w : g.children(u)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

std::vector<std::string> descendants(const TaskGraph& g, std::string_view id) {
  std::vector<std::string> out;
  for (std::size_t i : descendants(g, g.index_of(id))) out.push_back(g.task(i).id);
  return out;
}

CurrentExtremes current_extremes(const TaskGraph& g) {
  CurrentExtremes ex{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& t : g.tasks()) {
    for (const auto& dp : t.design_points) {
      ex.min = std::min(ex.min, dp.current);
      ex.max = std::max(ex.max, dp.current);
    }
  }
  return ex;
}

EnergyBounds energy_bounds(const TaskGraph& g) {
  EnergyBounds b;
  for (const auto& t : g.tasks()) {
    b.min += t.design_points.back().energy();
    b.max += t.design_points.front().energy();
  }
  return b;
}

bool energy_bracketing_holds(const TaskGraph& g) {
  for (const auto& t : g.tasks()) {
    const double hi = t.design_points.front().energy();
    const double lo = t.design_points.back().energy();
    for (const auto& dp : t.design_points) {
      if (dp.energy() > hi || dp.energy() < lo) return false;
    }
  }
  return true;
}

bool TaskGraph::operator==(const TaskGraph& other) const {
  if (tasks_ != other.tasks_ || deadline_ != other.deadline_ || edges_.size() != other.edges_.size()) return false;
  auto sorted = [](std::vector<Edge> e) {
    std::sort(e.begin(), e.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.parent, a.child) < std::tie(b.parent, b.child); });
    return e;
  };
  return sorted(edges_) == sorted(other.edges_);
}

}  // namespace batsched
