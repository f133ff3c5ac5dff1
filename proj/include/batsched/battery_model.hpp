#pragma once

// Analytical (diffusion-based) battery model over piecewise-constant loads.
//
// The apparent charge lost by time T for a profile of back-to-back intervals
// (I_k, Δ_k) starting at t_k is
//
//   σ(T) = Σ_k I_k ( Δ_k + 2 Σ_{m=1..M} [e^{-β²m²(T-t_k-Δ_k)} - e^{-β²m²(T-t_k)}] / (β²m²) )
//
// Currents are in mA, times in minutes, σ in mA·min.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace batsched {

struct Interval {
  double current = 0.0;   // mA, >= 0
  double duration = 0.0;  // min, > 0

  bool operator==(const Interval&) const = default;
};

// Back-to-back discharge intervals starting at t = 0. A rest period is an
// explicit 0 mA interval.
class DischargeProfile {
 public:
  DischargeProfile() = default;
  explicit DischargeProfile(std::vector<Interval> intervals);

  void append(double current, double duration);

  std::span<const Interval> intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }
  double total_duration() const { return total_duration_; }

  // Start time of interval k.
  double start_of(std::size_t k) const { return starts_.at(k); }

  // Σ I_k Δ_k: the charge an ideal battery would deliver.
  double ideal_charge() const;

  DischargeProfile scaled(double factor) const;

  bool operator==(const DischargeProfile&) const = default;

 private:
  std::vector<Interval> intervals_;
  std::vector<double> starts_;
  double total_duration_ = 0.0;
};

struct BatteryParams {
  double beta = 0.273;           // min^(-1/2)
  std::optional<double> alpha;   // mA·min, total available charge
  int series_terms = 10;

  // Throws std::invalid_argument on beta <= 0, series_terms < 1 or alpha <= 0.
  void validate() const;
};

// Charge lost by time T. Intervals starting at or after T are dropped and an
// interval straddling T is clipped to end at T.
double sigma(const DischargeProfile& profile, const BatteryParams& params, double T);

struct ChargeAtCompletion {
  double sigma = 0.0;
  double delta = 0.0;  // profile length, the evaluation time
};

ChargeAtCompletion sigma_at_completion(const DischargeProfile& profile, const BatteryParams& params);

// First time σ reaches α (to 1e-3 min), or nullopt if the battery survives the
// whole profile. Requires params.alpha.
std::optional<double> estimate_lifetime(const DischargeProfile& profile, const BatteryParams& params);

inline constexpr double kLifetimeResolution = 1e-3;

}  // namespace batsched
