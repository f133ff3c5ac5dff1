#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "batsched/battery_model.hpp"
#include "test_support.hpp"

using namespace batsched;
using batsched::testing::rel_diff;

namespace {

// Values from oracles/oracle_values.py (mpmath, 40 digits).
constexpr double kSigma100mA10min = 3850.84048249363;
constexpr double kSigma100mA50of100min = 9094.21697693219;

DischargeProfile random_profile(std::mt19937_64& rng, int max_len = 8) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_real_distribution<double> cur(0.0, 1000.0);
  std::uniform_real_distribution<double> dur(0.1, 30.0);
  std::bernoulli_distribution rest(0.2);
  DischargeProfile p;
  const int k = len(rng);
  for (int i = 0; i < k; ++i) p.append(rest(rng) ? 0.0 : cur(rng), dur(rng));
  return p;
}

}  // namespace

TEST_CASE("sigma of an all-zero profile is zero") {
  DischargeProfile p({{0.0, 3.0}, {0.0, 7.5}});
  const BatteryParams params;
  CHECK(sigma(p, params, 10.5) == 0.0);
  CHECK(sigma(p, params, 40.0) == 0.0);
  CHECK(sigma(p, params, 2.0) == 0.0);
}

TEST_CASE("sigma matches the high-precision reference for one interval") {
  DischargeProfile p({{100.0, 10.0}});
  BatteryParams params;
  params.beta = 0.273;
  CHECK(rel_diff(sigma(p, params, 10.0), kSigma100mA10min) < 1e-9);
}

TEST_CASE("sigma tends to the ideal charge as beta grows") {
  DischargeProfile p({{100.0, 10.0}});
  BatteryParams params;
  params.beta = 1e6;
  CHECK(rel_diff(sigma(p, params, 10.0), 1000.0) < 1e-6);
}

TEST_CASE("sigma clips the profile at the evaluation time") {
  BatteryParams params;
  const DischargeProfile long_run({{100.0, 100.0}});
  CHECK(rel_diff(sigma(long_run, params, 50.0), kSigma100mA50of100min) < 1e-9);

  // Intervals starting at or after T are dropped.
  const DischargeProfile two({{100.0, 50.0}, {400.0, 10.0}});
  CHECK(sigma(two, params, 50.0) == doctest::Approx(kSigma100mA50of100min).epsilon(1e-12));
  CHECK(sigma(two, params, 0.0) == 0.0);
}

TEST_CASE("sigma rejects bad evaluation times and parameters") {
  const DischargeProfile p({{10.0, 1.0}});
  BatteryParams params;
  CHECK_THROWS_AS(sigma(p, params, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(sigma(p, params, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  CHECK_THROWS_AS(sigma(p, params, std::numeric_limits<double>::infinity()), std::invalid_argument);
  params.beta = 0.0;
  CHECK_THROWS_AS(sigma(p, params, 1.0), std::invalid_argument);
  params.beta = 0.3;
  params.series_terms = 0;
  CHECK_THROWS_AS(sigma(p, params, 1.0), std::invalid_argument);
  params.series_terms = 10;
  params.alpha = -5.0;
  CHECK_THROWS_AS(sigma(p, params, 1.0), std::invalid_argument);
}

TEST_CASE("profile intervals must be positive") {
  DischargeProfile p;
  CHECK_THROWS_AS(p.append(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(p.append(1.0, 0.0), std::invalid_argument);
  CHECK(p.empty());
  p.append(0.0, 2.0);
  p.append(5.0, 3.0);
  CHECK(p.start_of(1) == 2.0);
  CHECK(p.total_duration() == 5.0);
}

TEST_CASE("sigma_at_completion evaluates at the profile length") {
  const BatteryParams params;
  const auto idle = sigma_at_completion(DischargeProfile({{0.0, 5.0}}), params);
  CHECK(idle.sigma == 0.0);
  CHECK(idle.delta == 5.0);

  const auto one = sigma_at_completion(DischargeProfile({{100.0, 10.0}}), params);
  CHECK(rel_diff(one.sigma, kSigma100mA10min) < 1e-9);
  CHECK(one.delta == 10.0);

  CHECK_THROWS_AS(sigma_at_completion(DischargeProfile{}, params), std::invalid_argument);
}

TEST_CASE("splitting a constant-current interval leaves sigma unchanged") {
  const BatteryParams params;
  const auto split = sigma_at_completion(DischargeProfile({{70.0, 4.0}, {70.0, 4.0}}), params);
  const auto whole = sigma_at_completion(DischargeProfile({{70.0, 8.0}}), params);
  CHECK(split.sigma == doctest::Approx(whole.sigma).epsilon(1e-12));
}

TEST_CASE("estimate_lifetime") {
  BatteryParams params;
  const DischargeProfile constant({{100.0, 100.0}});

  SUBCASE("huge alpha survives") {
    params.alpha = 1e9;
    CHECK_FALSE(estimate_lifetime(constant, params).has_value());
  }
  SUBCASE("finds the crossing of an independently evaluated sigma") {
    params.alpha = kSigma100mA50of100min;
    const auto t = estimate_lifetime(constant, params);
    REQUIRE(t.has_value());
    CHECK(std::abs(*t - 50.0) <= kLifetimeResolution);
  }
  SUBCASE("tiny alpha crosses within the first scan step") {
    params.alpha = 1e-3;
    const auto t = estimate_lifetime(constant, params);
    REQUIRE(t.has_value());
    CHECK(*t <= constant.total_duration() / 1000.0 + 1e-12);
    CHECK(*t > 0.0);
  }
  SUBCASE("needs alpha and a profile") {
    CHECK_THROWS_AS(estimate_lifetime(constant, params), std::invalid_argument);
    params.alpha = 10.0;
    CHECK_THROWS_AS(estimate_lifetime(DischargeProfile{}, params), std::invalid_argument);
  }
}

TEST_CASE("sigma properties over random profiles") {
  std::mt19937_64 rng(20240611);
  const BatteryParams params;
  std::uniform_real_distribution<double> extra(0.0, 50.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);

  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_profile(rng);
    const double end = p.total_duration();
    const double T = end + extra(rng);
    const double s = sigma(p, params, T);

    // Lower bound: the ideal charge.
    CHECK(s >= p.ideal_charge() * (1.0 - 1e-12));

    // Linearity in current.
    const double c = scale(rng);
    CHECK(sigma(p.scaled(c), params, T) == doctest::Approx(c * s).epsilon(1e-12));

    // Additivity: each interval alone, preceded by a rest of its start time.
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      DischargeProfile single;
      if (p.start_of(k) > 0.0) single.append(0.0, p.start_of(k));
      single.append(p.intervals()[k].current, p.intervals()[k].duration);
      sum += sigma(single, params, T);
    }
    CHECK(sum == doctest::Approx(s).epsilon(1e-10));

    // Recovery: idle time after the profile strictly reduces sigma.
    if (p.ideal_charge() > 0.0) {
      const double later = sigma(p, params, T + 1.0);
      CHECK(later < s);
    }
  }
}

TEST_CASE("non-increasing currents minimise sigma for independent tasks") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cur(1.0, 1000.0);
  std::uniform_int_distribution<int> ticks(1, 300);
  const BatteryParams params;

  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
    std::vector<Interval> tasks(n);
    for (auto& t : tasks) t = {cur(rng), ticks(rng) / 10.0};

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    double worst = -best;
    do {
      DischargeProfile p;
      for (std::size_t i : perm) p.append(tasks[i].current, tasks[i].duration);
      const double s = sigma_at_completion(p, params).sigma;
      best = std::min(best, s);
      worst = std::max(worst, s);
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto sorted = tasks;
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.current > b.current; });
    CHECK(sigma_at_completion(DischargeProfile(sorted), params).sigma <= best * (1.0 + 1e-12));
    std::reverse(sorted.begin(), sorted.end());
    CHECK(sigma_at_completion(DischargeProfile(sorted), params).sigma >= worst * (1.0 - 1e-12));
  }
}
