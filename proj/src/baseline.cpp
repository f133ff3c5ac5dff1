#include "batsched/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "batsched/errors.hpp"

namespace batsched {

namespace {

long long to_ticks(double minutes) {
  const double scaled = minutes * kTicksPerMinute;
  const long long ticks = std::llround(scaled);
  if (std::abs(scaled - static_cast<double>(ticks)) > 1e-6)
    throw std::invalid_argument("duration is not a multiple of 0.1 min");
  return ticks;
}

}  // namespace

ColumnChoice min_energy_allocation(const TaskGraph& g, double deadline) {
  require_valid(g);
  const std::size_t n = g.size();
  const std::size_t m = g.design_point_count();

  // Tasks in id order; the DP runs backwards so reconstruction can greedily
  // prefer the largest column of each task in that order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.id_rank(a) < g.id_rank(b); });

  std::vector<std::vector<long long>> ticks(n, std::vector<long long>(m));
  long long fastest = 0;
  long long slowest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < m; ++c) ticks[i][c] = to_ticks(g.point(i, c).duration);
    fastest += ticks[i][0];
    slowest += ticks[i][m - 1];
  }
  const long long budget_ticks = static_cast<long long>(std::floor(deadline * kTicksPerMinute + 1e-9));
  if (budget_ticks < fastest) throw DeadlineInfeasible();
  const long long cap = std::min(budget_ticks, slowest);
  const auto width = static_cast<std::size_t>(cap + 1);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // best[k][t]: least energy for order[k..n) within t ticks.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(width, kInf));
  std::fill(best[n].begin(), best[n].end(), 0.0);
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t task = order[k];
    for (std::size_t t = 0; t < width; ++t) {
      double v = kInf;
      for (std::size_t c = 0; c < m; ++c) {
        const auto dt = static_cast<std::size_t>(ticks[task][c]);
        if (dt > t) continue;
        v = std::min(v, g.point(task, c).energy() + best[k + 1][t - dt]);
      }
      best[k][t] = v;
    }
  }

  ColumnChoice out(n, 0);
  std::size_t t = width - 1;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t task = order[k];
    const double target = best[k][t];
    const double tol = 1e-9 * std::max(1.0, std::abs(target));
    for (std::size_t c = m; c-- > 0;) {
      const auto dt = static_cast<std::size_t>(ticks[task][c]);
      if (dt > t) continue;
      if (g.point(task, c).energy() + best[k + 1][t - dt] <= target + tol) {
        out[task] = c;
        t -= dt;
        break;
      }
    }
  }
  return out;
}

BaselineResult baseline_schedule(const TaskGraph& g, const BatteryParams& params) {
  BaselineResult r;
  r.columns = min_energy_allocation(g, g.deadline());
  r.sequence = baseline_sequence(g, chosen_currents(g, r.columns));
  const auto cost = calculate_battery_cost(g, r.sequence, r.columns, params);
  r.sigma = cost.sigma;
  r.delta = cost.delta;
  r.total_energy = total_energy(g, r.columns);
  return r;
}

std::vector<Sequence> topological_orders(const TaskGraph& g, std::uint64_t cap) {
  const std::size_t n = g.size();
  std::vector<Sequence> out;
  std::vector<std::size_t> waiting(n);
  for (std::size_t i = 0; i < n; ++i) waiting[i] = g.parents(i).size();
  std::vector<bool> used(n, false);
  Sequence prefix;

  auto recurse = [&](auto& self) -> void {
    if (out.size() >= cap) return;
    if (prefix.size() == n) {
      out.push_back(prefix);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v] || waiting[v] != 0) continue;
      used[v] = true;
      prefix.push_back(v);
      for (std::size_t c : g.children(v)) --waiting[c];
      self(self);
      for (std::size_t c : g.children(v)) ++waiting[c];
      prefix.pop_back();
      used[v] = false;
    }
  };
  recurse(recurse);
  return out;
}

OracleResult exhaustive_oracle(const TaskGraph& g, const BatteryParams& params, const OracleLimits& limits) {
  require_valid(g);
  params.validate();
  const std::size_t n = g.size();
  const std::size_t m = g.design_point_count();

  const auto orders = topological_orders(g, limits.max_configurations + 1);
  long double space = static_cast<long double>(orders.size());
  for (std::size_t i = 0; i < n; ++i) space *= static_cast<long double>(m);
  if (space > static_cast<long double>(limits.max_configurations))
    throw BudgetExceeded("exhaustive search space exceeds the configured budget; use a smaller instance");

  // Deadline-feasible assignments, odometer order.
  std::vector<ColumnChoice> assignments;
  ColumnChoice cols(n, 0);
  while (true) {
    if (total_duration(g, cols) <= g.deadline()) assignments.push_back(cols);
    std::size_t k = 0;
    while (k < n && ++cols[k] == m) cols[k++] = 0;
    if (k == n) break;
  }
  if (assignments.empty()) throw DeadlineInfeasible();

  OracleResult r;
  r.best_sigma = std::numeric_limits<double>::infinity();
  r.worst_sigma = -std::numeric_limits<double>::infinity();
  for (const auto& seq : orders) {
    for (const auto& a : assignments) {
      const double s = calculate_battery_cost(g, seq, a, params).sigma;
      ++r.enumerated;
      if (s < r.best_sigma) {
        r.best_sigma = s;
        r.best_sequence = seq;
        r.best_columns = a;
      }
      if (s > r.worst_sigma) {
        r.worst_sigma = s;
        r.worst_sequence = seq;
        r.worst_columns = a;
      }
    }
  }
  return r;
}

}  // namespace batsched
