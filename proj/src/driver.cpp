#include "batsched/driver.hpp"

#include <limits>
#include <stdexcept>

namespace batsched {

ScheduleResult schedule(const TaskGraph& graph, const BatteryParams& params, const ScheduleOptions& options) {
  require_valid(graph);
  params.validate();
  if (options.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");

  const double d = graph.deadline();
  ScheduleResult result;
  result.sigma = std::numeric_limits<double>::infinity();

  double previous = std::numeric_limits<double>::infinity();
  Sequence current = sequence_dec_energy(graph, options.weight_mode);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    WindowScan scan = evaluate_windows(graph, current, d, params, options.parallel_windows);

    IterationLog log;
    log.sequence = current;
    log.windows = scan.log;
    log.best_window = scan.best_window;
    log.window_best_sigma = scan.min_cost;
    log.window_best_delta = scan.delta;
    log.columns = scan.best.columns_by_task(current);

    // Columns follow their tasks into the new order.
    log.weighted_sequence = weighted_sequence(graph, chosen_currents(graph, log.columns));
    const auto weighted = calculate_battery_cost(graph, log.weighted_sequence, log.columns, params);
    log.weighted_sigma = weighted.sigma;
    log.weighted_delta = weighted.delta;

    double iteration_cost = scan.min_cost;
    if (weighted.sigma < iteration_cost) iteration_cost = weighted.sigma;
    log.iteration_best_sigma = iteration_cost;

    if (scan.min_cost < result.sigma) {
      result.sequence = current;
      result.columns = log.columns;
      result.sigma = scan.min_cost;
      result.delta = scan.delta;
    }
    if (weighted.sigma < result.sigma) {
      result.sequence = log.weighted_sequence;
      result.columns = log.columns;
      result.sigma = weighted.sigma;
      result.delta = weighted.delta;
    }
    log.best_so_far_sigma = result.sigma;
    result.iterations.push_back(std::move(log));

    if (iteration_cost >= previous) {
      result.converged = true;
      break;
    }
    previous = iteration_cost;
    current = result.iterations.back().weighted_sequence;
  }

  if (params.alpha) result.alpha_exceeded = result.sigma > *params.alpha;
  return result;
}

}  // namespace batsched
