// batsched: battery-aware task sequencing and design-point assignment.
//
// Exit codes: 0 success, 1 internal error, 2 input error, 3 deadline infeasible.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "batsched/baseline.hpp"
#include "batsched/driver.hpp"
#include "batsched/errors.hpp"
#include "batsched/graph_io.hpp"
#include "batsched/report.hpp"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;

struct CommonFlags {
  std::string file;
  std::optional<double> deadline;
  std::optional<double> beta;
  std::optional<int> series_terms;
  std::optional<double> alpha;
  int max_iterations = 50;
  std::string weight_mode = "current";
  std::string format = "json";
  std::string out;
  bool parallel = false;
};

// File values first, then flag overrides.
batsched::GraphFile load(const CommonFlags& f) {
  auto file = batsched::load_graph_file(f.file);
  if (f.deadline) file.graph = file.graph.with_deadline(*f.deadline);
  if (f.beta) file.battery.beta = *f.beta;
  if (f.series_terms) file.battery.series_terms = *f.series_terms;
  if (f.alpha) file.battery.alpha = *f.alpha;
  batsched::require_valid(file.graph);
  file.battery.validate();
  return file;
}

batsched::ScheduleOptions options(const CommonFlags& f) {
  batsched::ScheduleOptions o;
  o.weight_mode = f.weight_mode == "energy" ? batsched::WeightMode::mean_energy : batsched::WeightMode::mean_current;
  o.max_iterations = f.max_iterations;
  o.parallel_windows = f.parallel;
  return o;
}

void emit(const CommonFlags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + f.out + "'");
  out << text;
}

void add_file(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("file", f.file, "Graph file (JSON)")->required();
}

void add_battery_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--deadline", f.deadline, "Deadline in minutes (overrides the file)");
  cmd->add_option("--beta", f.beta, "Battery beta (overrides the file)");
  cmd->add_option("--series-terms", f.series_terms, "Battery model series terms (overrides the file)");
}

void add_schedule_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--max-iterations", f.max_iterations, "Iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--weight-mode", f.weight_mode, "Initial sequencing weight")
      ->check(CLI::IsMember({"current", "energy"}));
  cmd->add_flag("--parallel", f.parallel, "Evaluate allocation windows concurrently");
}

void add_output_flags(CLI::App* cmd, CommonFlags& f, bool with_format = true) {
  if (with_format) cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--out", f.out, "Write output to this path instead of stdout");
}

int run_validate(const CommonFlags& f) {
  const auto file = batsched::load_graph_file(f.file);
  const auto violations = batsched::validate(file.graph);
  if (violations.empty()) {
    std::cout << "ok\n";
    if (!batsched::energy_bracketing_holds(file.graph))
      std::cerr << "warning: some task's energy is not bracketed by its first and last design points\n";
    return 0;
  }
  for (const auto& v : violations) std::cout << v << "\n";
  return kExitInput;
}

int run_schedule(const CommonFlags& f) {
  const auto file = load(f);
  const auto result = batsched::schedule(file.graph, file.battery, options(f));
  if (result.alpha_exceeded) std::cerr << "warning: sigma exceeds the available battery charge alpha\n";
  emit(f, f.format == "table" ? batsched::schedule_table(file, result)
                              : batsched::dump(batsched::schedule_report(file, result)));
  return 0;
}

int run_baseline(const CommonFlags& f) {
  const auto file = load(f);
  const auto result = batsched::baseline_schedule(file.graph, file.battery);
  emit(f, f.format == "table" ? batsched::baseline_table(file, result)
                              : batsched::dump(batsched::baseline_report(file, result)));
  return 0;
}

int run_compare(const CommonFlags& f, const std::vector<double>& deadlines) {
  const auto file = load(f);
  std::vector<double> list = deadlines;
  if (list.empty()) list.push_back(file.graph.deadline());

  std::vector<batsched::ComparisonRow> rows;
  for (double d : list) {
    batsched::ComparisonRow row;
    row.deadline = d;
    const auto graph = file.graph.with_deadline(d);
    try {
      const auto ours = batsched::schedule(graph, file.battery, options(f));
      const auto base = batsched::baseline_schedule(graph, file.battery);
      row.ours = ours.sigma;
      row.ours_delta = ours.delta;
      row.baseline = base.sigma;
      row.baseline_delta = base.delta;
    } catch (const batsched::DeadlineInfeasible&) {
      row.ours.reset();
      row.baseline.reset();
    }
    rows.push_back(row);
  }
  emit(f, f.format == "table" ? batsched::comparison_table(rows)
                              : batsched::dump(batsched::comparison_report(file, rows)));
  return 0;
}

int run_profile(const CommonFlags& f) {
  const auto file = load(f);
  const auto result = batsched::schedule(file.graph, file.battery, options(f));
  emit(f, batsched::profile_to_csv(batsched::build_profile(file.graph, result.sequence, result.columns)));
  return 0;
}

int run_lifetime(const CommonFlags& f) {
  const auto file = load(f);
  if (!file.battery.alpha) throw std::invalid_argument("lifetime needs --alpha or battery.alpha_mA_min");
  const auto result = batsched::schedule(file.graph, file.battery, options(f));
  const auto profile = batsched::build_profile(file.graph, result.sequence, result.columns);
  const auto lifetime = batsched::estimate_lifetime(profile, file.battery);
  emit(f, lifetime ? batsched::format_number(*lifetime) + "\n" : std::string("survives-profile\n"));
  return 0;
}

int run_oracle(const CommonFlags& f, std::uint64_t budget) {
  const auto file = load(f);
  const auto result = batsched::exhaustive_oracle(file.graph, file.battery, {budget});
  emit(f, batsched::dump(batsched::oracle_report(file, result)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Battery-aware task sequencing and design-point assignment"};
  app.require_subcommand(1);

  CommonFlags f;
  std::vector<double> deadlines;
  std::uint64_t budget = 1'000'000;

  auto* validate = app.add_subcommand("validate", "Check a graph file");
  add_file(validate, f);

  auto* schedule = app.add_subcommand("schedule", "Run the iterative battery-aware scheduler");
  add_file(schedule, f);
  add_battery_flags(schedule, f);
  add_schedule_flags(schedule, f);
  add_output_flags(schedule, f);

  auto* baseline = app.add_subcommand("baseline", "Minimum-energy allocation with greedy sequencing");
  add_file(baseline, f);
  add_battery_flags(baseline, f);
  add_output_flags(baseline, f);

  auto* compare = app.add_subcommand("compare", "Scheduler vs baseline over several deadlines");
  add_file(compare, f);
  add_battery_flags(compare, f);
  add_schedule_flags(compare, f);
  add_output_flags(compare, f);
  compare->add_option("--deadlines", deadlines, "Comma-separated deadlines in minutes")->delimiter(',');

  auto* profile = app.add_subcommand("profile", "Discharge profile CSV of the final schedule");
  add_file(profile, f);
  add_battery_flags(profile, f);
  add_schedule_flags(profile, f);
  add_output_flags(profile, f, false);

  auto* lifetime = app.add_subcommand("lifetime", "Battery lifetime under the final schedule's profile");
  add_file(lifetime, f);
  add_battery_flags(lifetime, f);
  add_schedule_flags(lifetime, f);
  add_output_flags(lifetime, f, false);
  lifetime->add_option("--alpha", f.alpha, "Available battery charge in mA*min");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for tiny graphs");
  add_file(oracle, f);
  add_battery_flags(oracle, f);
  add_output_flags(oracle, f, false);
  oracle->add_option("--budget", budget, "Maximum configurations to enumerate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*validate) return run_validate(f);
    if (*schedule) return run_schedule(f);
    if (*baseline) return run_baseline(f);
    if (*compare) return run_compare(f, deadlines);
    if (*profile) return run_profile(f);
    if (*lifetime) return run_lifetime(f);
    if (*oracle) return run_oracle(f, budget);
  } catch (const batsched::DeadlineInfeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const batsched::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const batsched::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
