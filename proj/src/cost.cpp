#include "batsched/cost.hpp"

#include <stdexcept>

namespace batsched {

namespace {

void check(const TaskGraph& g, const ColumnChoice& columns) {
  if (columns.size() != g.size()) throw std::invalid_argument("a column must be chosen for every task");
  for (std::size_t c : columns)
    if (c >= g.design_point_count()) throw std::invalid_argument("design-point column out of range");
}

}  // namespace

DischargeProfile build_profile(const TaskGraph& g, const Sequence& sequence, const ColumnChoice& columns) {
  check(g, columns);
  if (!is_topological_order(g, sequence)) throw std::invalid_argument("sequence is not a valid task order");
  DischargeProfile profile;
  for (std::size_t task : sequence) {
    const auto& dp = g.point(task, columns[task]);
    profile.append(dp.current, dp.duration);
  }
  return profile;
}

ChargeAtCompletion calculate_battery_cost(const TaskGraph& g, const Sequence& sequence, const ColumnChoice& columns,
                                          const BatteryParams& params) {
  return sigma_at_completion(build_profile(g, sequence, columns), params);
}

double total_duration(const TaskGraph& g, const ColumnChoice& columns) {
  check(g, columns);
  double t = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) t += g.point(i, columns[i]).duration;
  return t;
}

double total_energy(const TaskGraph& g, const ColumnChoice& columns) {
  check(g, columns);
  double e = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) e += g.point(i, columns[i]).energy();
  return e;
}

std::vector<double> chosen_currents(const TaskGraph& g, const ColumnChoice& columns) {
  check(g, columns);
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = g.point(i, columns[i]).current;
  return out;
}

}  // namespace batsched
