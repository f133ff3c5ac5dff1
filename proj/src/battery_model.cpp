#include "batsched/battery_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace batsched {

DischargeProfile::DischargeProfile(std::vector<Interval> intervals) {
  intervals_.reserve(intervals.size());
  starts_.reserve(intervals.size());
  for (const auto& iv : intervals) append(iv.current, iv.duration);
}

void DischargeProfile::append(double current, double duration) {
  if (!std::isfinite(current) || current < 0.0)
    throw std::invalid_argument("discharge current must be finite and non-negative");
  if (!std::isfinite(duration) || duration <= 0.0)
    throw std::invalid_argument("discharge duration must be finite and positive");
  starts_.push_back(total_duration_);
  intervals_.push_back({current, duration});
  total_duration_ += duration;
}

double DischargeProfile::ideal_charge() const {
  double total = 0.0;
  for (const auto& iv : intervals_) total += iv.current * iv.duration;
  return total;
}

DischargeProfile DischargeProfile::scaled(double factor) const {
  DischargeProfile out;
  for (const auto& iv : intervals_) out.append(iv.current * factor, iv.duration);
  return out;
}

void BatteryParams::validate() const {
  if (!std::isfinite(beta) || beta <= 0.0) throw std::invalid_argument("beta must be positive");
  if (series_terms < 1) throw std::invalid_argument("series_terms must be at least 1");
  if (alpha && (!std::isfinite(*alpha) || *alpha <= 0.0))
    throw std::invalid_argument("alpha must be positive when given");
}

double sigma(const DischargeProfile& profile, const BatteryParams& params, double T) {
  params.validate();
  if (!std::isfinite(T) || T < 0.0) throw std::invalid_argument("evaluation time must be finite and >= 0");

  const double beta2 = params.beta * params.beta;
  double total = 0.0;
  const auto intervals = profile.intervals();
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    const double start = profile.start_of(k);
    if (start >= T) break;
    const double current = intervals[k].current;
    if (current == 0.0) continue;
    const double duration = std::min(intervals[k].duration, T - start);

    // Both exponent arguments are >= 0 by construction; clamp against rounding.
    const double since_end = std::max(0.0, T - start - duration);
    const double since_start = std::max(0.0, T - start);
    double series = 0.0;
    for (int m = 1; m <= params.series_terms; ++m) {
      const double a = beta2 * static_cast<double>(m) * static_cast<double>(m);
      series += (std::exp(-a * since_end) - std::exp(-a * since_start)) / a;
    }
    total += current * (duration + 2.0 * series);
  }
  return total;
}

ChargeAtCompletion sigma_at_completion(const DischargeProfile& profile, const BatteryParams& params) {
  if (profile.empty()) throw std::invalid_argument("discharge profile is empty");
  const double T = profile.total_duration();
  return {sigma(profile, params, T), T};
}

std::optional<double> estimate_lifetime(const DischargeProfile& profile, const BatteryParams& params) {
  params.validate();
  if (!params.alpha) throw std::invalid_argument("lifetime estimation needs alpha");
  if (profile.empty()) throw std::invalid_argument("discharge profile is empty");

  const double alpha = *params.alpha;
  const double horizon = profile.total_duration();
  constexpr int kScanSteps = 1000;
  const double step = std::max(horizon / kScanSteps, kLifetimeResolution);

  double lo = 0.0;
  double hi = 0.0;
  bool crossed = false;
  while (hi < horizon) {
    lo = hi;
    hi = std::min(hi + step, horizon);
    if (sigma(profile, params, hi) >= alpha) {
      crossed = true;
      break;
    }
  }
  if (!crossed) return std::nullopt;

  while (hi - lo > kLifetimeResolution) {
    const double mid = 0.5 * (lo + hi);
    if (sigma(profile, params, mid) >= alpha) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace batsched
