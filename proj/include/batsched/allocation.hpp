#pragma once

// Design-point allocation for a fixed task sequence.
//
// A window [start, m) restricts which columns may be chosen. For each window,
// choose_design_points walks the sequence from the last task to the first and
// scores every candidate column by the suitability
//
//   B = SR + CR + ENR + CIF + DPF        (lower is better)
//
// where DPF comes from a tentative completion of the still-free tasks
// (calculate_dpf). evaluate_windows tries every feasible window and keeps the
// assignment with the lowest battery cost.
//
// Columns are 0-based: column 0 is the fastest / highest-current design point.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "batsched/battery_model.hpp"
#include "batsched/cost.hpp"
#include "batsched/sequencing.hpp"
#include "batsched/taskgraph.hpp"

namespace batsched {

enum class TaskState { free, tagged, fixed };

// Selection matrix S for one sequence, one row per sequence position. Each row
// is one-hot, so it is stored as the selected column.
struct AssignmentState {
  std::vector<std::size_t> column;  // per position
  std::vector<TaskState> state;     // per position
  std::vector<bool> energy_fixed;   // per task index: state in the energy-vector copy

  // Every row on the last column, every task free.
  static AssignmentState initial(std::size_t tasks, std::size_t design_points);

  std::size_t free_count() const;
  std::optional<std::size_t> tagged_position() const;
  ColumnChoice columns_by_task(const Sequence& sequence) const;
};

struct Window {
  std::size_t start = 0;  // first active column; active columns are [start, m)
};

struct ScoreBreakdown {
  double sr = 0.0;
  double cr = 0.0;
  double enr = 0.0;
  double cif = 0.0;
  double dpf = 0.0;  // +inf when the candidate cannot meet the deadline

  double b() const { return sr + cr + enr + cif + dpf; }
};

// SR = (d - t) / d. Negative when t > d.
double slack_ratio(double t, double d);
// CR = (I - Imin) / (Imax - Imin); 0 when Imax == Imin.
double current_ratio(double current, double min_current, double max_current);
// ENR = (En - Emin) / (Emax - Emin), clamped to [0, 1]; 0 when Emax == Emin.
double energy_ratio(double energy, double min_energy, double max_energy);
// Fraction of strictly increasing adjacent transitions; 0 for fewer than two.
double cif(std::span<const double> currents);

// DPF = Σ_k (m-1-k) · F_k / (m-1), F_k = share of free rows on column k.
// Requires at least one free row and m >= 2.
double dpf_formula(const AssignmentState& state, std::size_t design_points);

// Graph-wide quantities shared by every scoring call for one sequence.
class AllocationContext {
 public:
  AllocationContext(const TaskGraph& graph, Sequence sequence, double deadline);

  const TaskGraph& graph() const { return *graph_; }
  const Sequence& sequence() const { return sequence_; }
  double deadline() const { return deadline_; }
  std::size_t tasks() const { return sequence_.size(); }
  std::size_t design_points() const { return graph_->design_point_count(); }
  const std::vector<std::size_t>& energy_vector() const { return energy_order_; }
  std::size_t position_of(std::size_t task) const { return position_[task]; }
  const DesignPoint& point_at(std::size_t position, std::size_t column) const {
    return graph_->point(sequence_[position], column);
  }
  CurrentExtremes extremes() const { return extremes_; }
  EnergyBounds bounds() const { return bounds_; }

  // C_T(k): makespan with every task on column k.
  double column_time(std::size_t column) const;

 private:
  const TaskGraph* graph_;
  Sequence sequence_;
  double deadline_;
  std::vector<std::size_t> energy_order_;
  std::vector<std::size_t> position_;
  CurrentExtremes extremes_;
  EnergyBounds bounds_;
};

struct Factors {
  double cif = 0.0;
  double enr = 0.0;
};

// CIF over the chosen currents in sequence order, ENR over the chosen energies.
Factors calculate_factors(const AllocationContext& ctx, const AssignmentState& state);

struct DpfResult {
  double enr = 0.0;
  double cif = 0.0;
  double dpf = 0.0;
};

// Tentatively completes `state` (which must have exactly one tagged row):
// while the makespan exceeds the deadline, the first free task of the energy
// vector is moved one column toward the window start. The state is copied;
// the caller's state is not touched.
DpfResult calculate_dpf(const AllocationContext& ctx, const AssignmentState& state, Window window);

struct CandidateScore {
  std::size_t position = 0;
  std::size_t column = 0;
  ScoreBreakdown score;
};

// Fixes one column per task for the window. The last task in the sequence is
// always fixed on the last column. Throws WindowInfeasible when some task has
// no candidate with finite suitability. Every scored candidate is appended to
// `trace` when given.
AssignmentState choose_design_points(const AllocationContext& ctx, Window window,
                                     std::vector<CandidateScore>* trace = nullptr);

struct WindowLogEntry {
  std::size_t start = 0;
  bool feasible = false;
  double sigma = 0.0;
  double delta = 0.0;
};

struct WindowScan {
  double min_cost = 0.0;
  double delta = 0.0;
  std::size_t best_window = 0;
  AssignmentState best;
  std::vector<WindowLogEntry> log;  // widest-start first, i.e. in scan order
};

// Throws DeadlineInfeasible when d < C_T(0), or when no window yields a
// feasible assignment. Windows are independent; with `parallel` they run
// concurrently and merge to the same result as the serial scan.
WindowScan evaluate_windows(const TaskGraph& graph, const Sequence& sequence, double deadline,
                            const BatteryParams& params, bool parallel = false);

}  // namespace batsched
