#include "batsched/allocation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "batsched/errors.hpp"

namespace batsched {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

AssignmentState AssignmentState::initial(std::size_t tasks, std::size_t design_points) {
  if (design_points == 0) throw std::invalid_argument("need at least one design point");
  AssignmentState s;
  s.column.assign(tasks, design_points - 1);
  s.state.assign(tasks, TaskState::free);
  s.energy_fixed.assign(tasks, false);
  return s;
}

std::size_t AssignmentState::free_count() const {
  return static_cast<std::size_t>(std::count(state.begin(), state.end(), TaskState::free));
}

std::optional<std::size_t> AssignmentState::tagged_position() const {
  auto it = std::find(state.begin(), state.end(), TaskState::tagged);
  if (it == state.end()) return std::nullopt;
  return static_cast<std::size_t>(it - state.begin());
}

ColumnChoice AssignmentState::columns_by_task(const Sequence& sequence) const {
  if (sequence.size() != column.size()) throw std::invalid_argument("sequence does not match assignment");
  ColumnChoice out(sequence.size());
  for (std::size_t p = 0; p < sequence.size(); ++p) out.at(sequence[p]) = column[p];
  return out;
}

double slack_ratio(double t, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("deadline must be positive");
  return (d - t) / d;
}

double current_ratio(double current, double min_current, double max_current) {
  if (max_current <= min_current) return 0.0;
  return (current - min_current) / (max_current - min_current);
}

double energy_ratio(double energy, double min_energy, double max_energy) {
  if (max_energy <= min_energy) return 0.0;
  return std::clamp((energy - min_energy) / (max_energy - min_energy), 0.0, 1.0);
}

double cif(std::span<const double> currents) {
  if (currents.size() < 2) return 0.0;
  std::size_t rises = 0;
  for (std::size_t k = 1; k < currents.size(); ++k)
    if (currents[k - 1] < currents[k]) ++rises;
  return static_cast<double>(rises) / static_cast<double>(currents.size() - 1);
}

double dpf_formula(const AssignmentState& state, std::size_t design_points) {
  if (design_points < 2) throw std::invalid_argument("design-point fraction needs m >= 2");
  std::vector<std::size_t> per_column(design_points, 0);
  std::size_t free_rows = 0;
  for (std::size_t p = 0; p < state.column.size(); ++p) {
    if (state.state[p] != TaskState::free) continue;
    ++per_column.at(state.column[p]);
    ++free_rows;
  }
  if (free_rows == 0) throw std::invalid_argument("design-point fraction needs a free row");

  const double f = 1.0 / static_cast<double>(design_points - 1);
  double dpf = 0.0;
  for (std::size_t k = 0; k < design_points; ++k) {
    const double share = static_cast<double>(per_column[k]) / static_cast<double>(free_rows);
    dpf += static_cast<double>(design_points - 1 - k) * f * share;
  }
  return dpf;
}

AllocationContext::AllocationContext(const TaskGraph& graph, Sequence sequence, double deadline)
    : graph_(&graph),
      sequence_(std::move(sequence)),
      deadline_(deadline),
      energy_order_(energy_order(graph)),
      position_(graph.size(), graph.size()),
      extremes_(current_extremes(graph)),
      bounds_(energy_bounds(graph)) {
  if (!is_topological_order(graph, sequence_)) throw std::invalid_argument("sequence is not a valid task order");
  if (!(deadline > 0.0)) throw std::invalid_argument("deadline must be positive");
  for (std::size_t p = 0; p < sequence_.size(); ++p) position_[sequence_[p]] = p;
}

double AllocationContext::column_time(std::size_t column) const {
  double t = 0.0;
  for (std::size_t task = 0; task < graph_->size(); ++task) t += graph_->point(task, column).duration;
  return t;
}

namespace {

double makespan(const AllocationContext& ctx, const AssignmentState& s) {
  double t = 0.0;
  for (std::size_t p = 0; p < s.column.size(); ++p) t += ctx.point_at(p, s.column[p]).duration;
  return t;
}

}  // namespace

Factors calculate_factors(const AllocationContext& ctx, const AssignmentState& state) {
  std::vector<double> currents(state.column.size());
  double energy = 0.0;
  for (std::size_t p = 0; p < state.column.size(); ++p) {
    const auto& dp = ctx.point_at(p, state.column[p]);
    currents[p] = dp.current;
    energy += dp.energy();
  }
  return {cif(currents), energy_ratio(energy, ctx.bounds().min, ctx.bounds().max)};
}

DpfResult calculate_dpf(const AllocationContext& ctx, const AssignmentState& state, Window window) {
  if (!state.tagged_position()) throw std::invalid_argument("calculate_dpf needs a tagged row");

  AssignmentState work = state;
  for (std::size_t p = 0; p < work.state.size(); ++p)
    if (work.state[p] != TaskState::free) work.energy_fixed[ctx.sequence()[p]] = true;

  const double d = ctx.deadline();
  double tc = makespan(ctx, work);
  while (tc > d) {
    std::optional<std::size_t> row;
    for (std::size_t task : ctx.energy_vector()) {
      if (work.energy_fixed[task]) continue;
      const std::size_t p = ctx.position_of(task);
      if (work.state[p] != TaskState::free) continue;
      row = p;
      break;
    }
    if (!row) {
      const Factors fac = calculate_factors(ctx, work);
      return {fac.enr, fac.cif, kInf};
    }

    const std::size_t task = ctx.sequence()[*row];
    std::size_t& col = work.column[*row];
    if (col <= window.start) {
      // Already as fast as the window allows.
      work.energy_fixed[task] = true;
      continue;
    }
    if (col == window.start + 1) work.energy_fixed[task] = true;
    --col;
    tc = makespan(ctx, work);
  }

  double dpf = 0.0;
  if (work.free_count() == 0 || ctx.design_points() < 2) {
    dpf = slack_ratio(tc, d);
  } else {
    dpf = dpf_formula(work, ctx.design_points());
  }
  const Factors fac = calculate_factors(ctx, work);
  return {fac.enr, fac.cif, dpf};
}

AssignmentState choose_design_points(const AllocationContext& ctx, Window window,
                                     std::vector<CandidateScore>* trace) {
  const std::size_t n = ctx.tasks();
  const std::size_t m = ctx.design_points();
  if (n == 0) throw std::invalid_argument("empty sequence");
  if (window.start >= m) throw std::invalid_argument("window start out of range");

  const double d = ctx.deadline();
  const auto ex = ctx.extremes();

  AssignmentState s = AssignmentState::initial(n, m);
  const std::size_t last = n - 1;
  s.state[last] = TaskState::fixed;
  s.energy_fixed[ctx.sequence()[last]] = true;
  double fixed_time = ctx.point_at(last, m - 1).duration;

  for (std::size_t i = last; i-- > 0;) {
    const std::size_t task = ctx.sequence()[i];
    s.state[i] = TaskState::tagged;
    s.energy_fixed[task] = true;

    double best_b = kInf;
    std::size_t best_col = m;
    for (std::size_t j = m; j-- > window.start;) {
      s.column[i] = j;
      const auto& dp = ctx.point_at(i, j);
      const DpfResult r = calculate_dpf(ctx, s, window);
      ScoreBreakdown score{slack_ratio(fixed_time + dp.duration, d), current_ratio(dp.current, ex.min, ex.max),
                           r.enr, r.cif, r.dpf};
      if (trace) trace->push_back({i, j, score});
      // Scanning from the last column, strict < keeps the lower-power column on ties.
      if (score.b() < best_b) {
        best_b = score.b();
        best_col = j;
      }
    }
    if (best_col == m) throw WindowInfeasible("no design point of '" + ctx.graph().task(task).id + "' meets the deadline");

    s.column[i] = best_col;
    s.state[i] = TaskState::fixed;
    fixed_time += ctx.point_at(i, best_col).duration;
  }

  if (fixed_time > d) throw WindowInfeasible("assignment exceeds the deadline");
  return s;
}

WindowScan evaluate_windows(const TaskGraph& graph, const Sequence& sequence, double deadline,
                            const BatteryParams& params, bool parallel) {
  const AllocationContext ctx(graph, sequence, deadline);
  const std::size_t m = ctx.design_points();

  if (deadline < ctx.column_time(0)) throw DeadlineInfeasible();
  std::size_t start = m >= 2 ? m - 2 : 0;
  while (deadline < ctx.column_time(start)) --start;  // terminates: C_T(0) <= d

  struct Outcome {
    std::optional<AssignmentState> state;
    ChargeAtCompletion cost;
  };
  auto run = [&](std::size_t ws) {
    Outcome out;
    try {
      out.state = choose_design_points(ctx, Window{ws});
    } catch (const WindowInfeasible&) {
      return out;
    }
    out.cost = calculate_battery_cost(graph, ctx.sequence(), out.state->columns_by_task(ctx.sequence()), params);
    assert(out.cost.delta <= deadline);
    return out;
  };

  // Scan order: start, start-1, ..., 0.
  std::vector<Outcome> outcomes;
  outcomes.reserve(start + 1);
  if (parallel && start > 0) {
    std::vector<std::future<Outcome>> jobs;
    for (std::size_t ws = start + 1; ws-- > 0;) jobs.push_back(std::async(std::launch::async, run, ws));
    for (auto& job : jobs) outcomes.push_back(job.get());
  } else {
    for (std::size_t ws = start + 1; ws-- > 0;) outcomes.push_back(run(ws));
  }

  WindowScan scan;
  scan.min_cost = kInf;
  bool found = false;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const std::size_t ws = start - k;
    auto& o = outcomes[k];
    scan.log.push_back({ws, o.state.has_value(), o.cost.sigma, o.cost.delta});
    // Strict < keeps the larger window start on ties.
    if (o.state && o.cost.sigma < scan.min_cost) {
      scan.min_cost = o.cost.sigma;
      scan.delta = o.cost.delta;
      scan.best_window = ws;
      scan.best = std::move(*o.state);
      found = true;
    }
  }
  if (!found) throw DeadlineInfeasible("no window yields a feasible assignment");
  return scan;
}

}  // namespace batsched
