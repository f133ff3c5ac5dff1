#include <doctest.h>

#include <random>

#include "batsched/driver.hpp"
#include "batsched/errors.hpp"
#include "test_support.hpp"

using namespace batsched;
using batsched::testing::rel_diff;

namespace {

Task task(std::string id, std::vector<DesignPoint> dps) { return Task{std::move(id), "", std::move(dps)}; }

void check_invariants(const TaskGraph& g, const BatteryParams& params, const ScheduleResult& r) {
  REQUIRE_FALSE(r.iterations.empty());
  CHECK(is_topological_order(g, r.sequence));
  CHECK(r.delta <= g.deadline());
  CHECK(r.delta == doctest::Approx(total_duration(g, r.columns)).epsilon(1e-12));
  const auto recomputed = calculate_battery_cost(g, r.sequence, r.columns, params);
  CHECK(rel_diff(recomputed.sigma, r.sigma) < 1e-9);
  CHECK(r.sigma <= r.iterations.front().window_best_sigma);

  double lowest = r.iterations.front().iteration_best_sigma;
  for (std::size_t k = 0; k < r.iterations.size(); ++k) {
    const auto& it = r.iterations[k];
    CHECK(it.iteration_best_sigma == std::min(it.window_best_sigma, it.weighted_sigma));
    CHECK(it.window_best_delta <= g.deadline());
    CHECK(it.weighted_delta <= g.deadline());
    for (const auto& w : it.windows)
      if (w.feasible) CHECK(w.delta <= g.deadline());
    lowest = std::min(lowest, it.iteration_best_sigma);
    CHECK(it.best_so_far_sigma == lowest);
    // Every iteration that did not end the loop improved on the previous one.
    if (k > 0 && k + 1 < r.iterations.size())
      CHECK(it.iteration_best_sigma < r.iterations[k - 1].iteration_best_sigma);
  }
  CHECK(r.sigma == lowest);
}

}  // namespace

TEST_CASE("single task with a loose deadline") {
  TaskGraph g({task("x", {{300, 1}, {100, 2}, {20, 4}})}, {}, 1000);
  const BatteryParams params;
  const auto r = schedule(g, params);
  CHECK(r.columns == ColumnChoice{2});
  CHECK(r.iterations.size() == 2);  // the second iteration cannot improve
  CHECK(r.converged);
  CHECK(r.sigma == sigma_at_completion(DischargeProfile({{20, 4}}), params).sigma);
}

TEST_CASE("G3 at d = 230 follows the reference trajectory") {
  const auto file = testing::load_g3();
  const auto r = schedule(file.graph, file.battery);
  check_invariants(file.graph, file.battery, r);

  // From oracles/reference_scheduler.py, an independent re-implementation.
  REQUIRE(r.iterations.size() == 3);
  CHECK(sequence_ids(file.graph, r.iterations[0].sequence) ==
        std::vector<std::string>{"T1", "T4", "T5", "T7", "T3", "T2", "T6", "T8", "T10", "T9", "T13", "T12", "T11",
                                 "T14", "T15"});
  const double window_best[] = {16623.713681, 14657.150028, 15568.154841};
  const double weighted[] = {16604.444778, 14309.150151, 15498.822898};
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(rel_diff(r.iterations[k].window_best_sigma, window_best[k]) < 1e-9);
    CHECK(rel_diff(r.iterations[k].weighted_sigma, weighted[k]) < 1e-9);
  }
  CHECK(r.iterations[0].windows.size() == 4);
  CHECK(rel_diff(r.sigma, 14309.150151) < 1e-9);
  CHECK(r.converged);
  CHECK(sequence_ids(file.graph, r.sequence) ==
        std::vector<std::string>{"T1", "T2", "T4", "T5", "T3", "T6", "T7", "T8", "T9", "T11", "T10", "T13", "T12",
                                 "T14", "T15"});
}

TEST_CASE("iteration cap marks the result unconverged") {
  const auto file = testing::load_g3();
  ScheduleOptions opt;
  opt.max_iterations = 1;
  const auto r = schedule(file.graph, file.battery, opt);
  CHECK_FALSE(r.converged);
  REQUIRE(r.iterations.size() == 1);
  CHECK(r.sigma == r.iterations[0].iteration_best_sigma);

  opt.max_iterations = 0;
  CHECK_THROWS_AS(schedule(file.graph, file.battery, opt), std::invalid_argument);
}

TEST_CASE("infeasible deadline") {
  const auto file = testing::load_g3();
  CHECK_THROWS_AS(schedule(file.graph.with_deadline(1), file.battery), DeadlineInfeasible);
}

TEST_CASE("invalid graphs are rejected") {
  TaskGraph g({task("A", {{2, 1}}), task("B", {{2, 1}})}, {{"A", "B"}, {"B", "A"}}, 10);
  CHECK_THROWS_AS(schedule(g, BatteryParams{}), std::invalid_argument);
}

TEST_CASE("alpha only flags an overrun") {
  auto file = testing::load_g3();
  file.battery.alpha = 1000.0;
  CHECK(schedule(file.graph, file.battery).alpha_exceeded);
  file.battery.alpha = 1e9;
  CHECK_FALSE(schedule(file.graph, file.battery).alpha_exceeded);
}

TEST_CASE("parallel windows give identical results") {
  const auto file = testing::load_g3();
  ScheduleOptions par;
  par.parallel_windows = true;
  for (double d : {100.0, 150.0, 230.0}) {
    const auto g = file.graph.with_deadline(d);
    const auto a = schedule(g, file.battery);
    const auto b = schedule(g, file.battery, par);
    CHECK(a.sigma == b.sigma);
    CHECK(a.sequence == b.sequence);
    CHECK(a.columns == b.columns);
    CHECK(a.iterations.size() == b.iterations.size());
  }
}

TEST_CASE("mean-energy initial weights still produce a valid schedule") {
  const auto file = testing::load_g3();
  ScheduleOptions opt;
  opt.weight_mode = WeightMode::mean_energy;
  const auto r = schedule(file.graph, file.battery, opt);
  check_invariants(file.graph, file.battery, r);
}

TEST_CASE("schedule invariants on random graphs") {
  std::mt19937_64 rng(1234);
  const BatteryParams params;
  for (int trial = 0; trial < 60; ++trial) {
    auto g = testing::random_dag(rng, 1 + trial % 12, 1 + trial % 5, 0.3);
    std::uniform_real_distribution<double> pick(testing::always_feasible_deadline(g),
                                                testing::all_slow_time(g) * 1.1 + 0.1);
    g = g.with_deadline(pick(rng));
    const auto r = schedule(g, params);
    check_invariants(g, params, r);
    CHECK(schedule(g, params).columns == r.columns);
  }
}
