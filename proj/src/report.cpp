#include "batsched/report.hpp"

#include <cstdio>
#include <sstream>

namespace batsched {

using nlohmann::json;

std::string window_label(std::size_t start, std::size_t design_points) {
  return std::to_string(start + 1) + ":" + std::to_string(design_points);
}

namespace {

json id_list(const TaskGraph& g, const Sequence& seq) {
  json out = json::array();
  for (const auto& id : sequence_ids(g, seq)) out.push_back(id);
  return out;
}

// Tasks in sequence order with their chosen design point (1-based).
json assignment(const TaskGraph& g, const Sequence& seq, const ColumnChoice& columns) {
  json out = json::array();
  double start = 0.0;
  for (std::size_t task : seq) {
    const auto& dp = g.point(task, columns[task]);
    out.push_back({{"task", g.task(task).id},
                   {"design_point", columns[task] + 1},
                   {"current_mA", dp.current},
                   {"duration_min", dp.duration},
                   {"start_min", start}});
    start += dp.duration;
  }
  return out;
}

json battery(const BatteryParams& p) {
  json b{{"beta", p.beta}, {"series_terms", p.series_terms}};
  if (p.alpha) b["alpha_mA_min"] = *p.alpha;
  return b;
}

std::string fixed(double v, int digits = 1) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string joined(const TaskGraph& g, const Sequence& seq) {
  std::string s;
  for (const auto& id : sequence_ids(g, seq)) s += (s.empty() ? "" : ",") + id;
  return s;
}

std::string dp_list(const Sequence& seq, const ColumnChoice& columns) {
  std::string s;
  for (std::size_t task : seq) s += (s.empty() ? "P" : ",P") + std::to_string(columns[task] + 1);
  return s;
}

}  // namespace

json schedule_report(const GraphFile& file, const ScheduleResult& r) {
  const auto& g = file.graph;
  const std::size_t m = g.design_point_count();
  json iterations = json::array();
  for (std::size_t k = 0; k < r.iterations.size(); ++k) {
    const auto& it = r.iterations[k];
    json windows = json::array();
    for (const auto& w : it.windows) {
      json entry{{"window", window_label(w.start, m)}, {"feasible", w.feasible}};
      if (w.feasible) {
        entry["sigma_mA_min"] = w.sigma;
        entry["delta_min"] = w.delta;
      }
      windows.push_back(entry);
    }
    iterations.push_back({{"iteration", k + 1},
                          {"sequence", id_list(g, it.sequence)},
                          {"assignment", assignment(g, it.sequence, it.columns)},
                          {"windows", windows},
                          {"window_best",
                           {{"window", window_label(it.best_window, m)},
                            {"sigma_mA_min", it.window_best_sigma},
                            {"delta_min", it.window_best_delta}}},
                          {"weighted_sequence", id_list(g, it.weighted_sequence)},
                          {"weighted_sigma_mA_min", it.weighted_sigma},
                          {"weighted_delta_min", it.weighted_delta},
                          {"iteration_best_sigma_mA_min", it.iteration_best_sigma},
                          {"best_so_far_sigma_mA_min", it.best_so_far_sigma}});
  }
  json doc{{"graph", file.name},
           {"deadline_min", g.deadline()},
           {"battery", battery(file.battery)},
           {"sequence", id_list(g, r.sequence)},
           {"assignment", assignment(g, r.sequence, r.columns)},
           {"sigma_mA_min", r.sigma},
           {"delta_min", r.delta},
           {"converged", r.converged},
           {"iterations", iterations}};
  if (file.battery.alpha) doc["alpha_exceeded"] = r.alpha_exceeded;
  return doc;
}

std::string schedule_table(const GraphFile& file, const ScheduleResult& r) {
  const auto& g = file.graph;
  const std::size_t m = g.design_point_count();
  std::ostringstream os;
  os << "Task sequences\n";
  for (std::size_t k = 0; k < r.iterations.size(); ++k) {
    const auto& it = r.iterations[k];
    const std::string tag = "S" + std::to_string(k + 1);
    os << "  " << tag << "\t" << joined(g, it.sequence) << "\n";
    os << "  DP\t" << dp_list(it.sequence, it.columns) << "\n";
    os << "  " << tag << "w\t" << joined(g, it.weighted_sequence) << "\n";
  }

  os << "\nSeq";
  const std::size_t widest = m >= 2 ? m - 1 : 1;
  for (std::size_t ws = 0; ws < widest; ++ws) os << "\tWin " << window_label(ws, m) << "\t";
  os << "\tMin sigma\tDelta\n";
  for (std::size_t k = 0; k < r.iterations.size(); ++k) {
    const auto& it = r.iterations[k];
    const std::string tag = "S" + std::to_string(k + 1);
    os << tag;
    for (std::size_t ws = 0; ws < widest; ++ws) {
      const WindowLogEntry* hit = nullptr;
      for (const auto& w : it.windows)
        if (w.start == ws) hit = &w;
      if (hit && hit->feasible) {
        os << "\t" << fixed(hit->sigma, 0) << "\t" << fixed(hit->delta);
      } else {
        os << "\t-\t-";
      }
    }
    os << "\t" << fixed(it.window_best_sigma, 0) << "\t" << fixed(it.window_best_delta) << "\n";
    os << tag << "w";
    for (std::size_t ws = 0; ws < widest; ++ws) os << "\t-\t-";
    const bool weighted_better = it.weighted_sigma < it.window_best_sigma;
    os << "\t" << fixed(it.iteration_best_sigma, 0) << "\t"
       << fixed(weighted_better ? it.weighted_delta : it.window_best_delta) << "\n";
  }

  os << "\nFinal sequence\t" << joined(g, r.sequence) << "\n";
  os << "Design points\t" << dp_list(r.sequence, r.columns) << "\n";
  os << "sigma\t" << fixed(r.sigma, 2) << " mA*min\n";
  os << "Delta\t" << fixed(r.delta, 2) << " min (deadline " << format_number(g.deadline()) << ")\n";
  os << "converged\t" << (r.converged ? "yes" : "no") << "\n";
  return os.str();
}

json baseline_report(const GraphFile& file, const BaselineResult& r) {
  const auto& g = file.graph;
  return {{"graph", file.name},
          {"deadline_min", g.deadline()},
          {"battery", battery(file.battery)},
          {"sequence", id_list(g, r.sequence)},
          {"assignment", assignment(g, r.sequence, r.columns)},
          {"sigma_mA_min", r.sigma},
          {"delta_min", r.delta},
          {"total_energy_mA_min", r.total_energy}};
}

std::string baseline_table(const GraphFile& file, const BaselineResult& r) {
  const auto& g = file.graph;
  std::ostringstream os;
  os << "Sequence\t" << joined(g, r.sequence) << "\n";
  os << "Design points\t" << dp_list(r.sequence, r.columns) << "\n";
  os << "Energy\t" << fixed(r.total_energy, 2) << " mA*min\n";
  os << "sigma\t" << fixed(r.sigma, 2) << " mA*min\n";
  os << "Delta\t" << fixed(r.delta, 2) << " min (deadline " << format_number(g.deadline()) << ")\n";
  return os.str();
}

std::optional<double> ComparisonRow::percent_diff() const {
  if (!ours || !baseline) return std::nullopt;
  return (*baseline - *ours) / *ours * 100.0;
}

json comparison_report(const GraphFile& file, const std::vector<ComparisonRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json entry{{"deadline_min", row.deadline}};
    entry["ours_sigma_mA_min"] = row.ours ? json(*row.ours) : json(nullptr);
    entry["ours_delta_min"] = row.ours_delta ? json(*row.ours_delta) : json(nullptr);
    entry["baseline_sigma_mA_min"] = row.baseline ? json(*row.baseline) : json(nullptr);
    entry["baseline_delta_min"] = row.baseline_delta ? json(*row.baseline_delta) : json(nullptr);
    const auto diff = row.percent_diff();
    entry["percent_diff"] = diff ? json(*diff) : json(nullptr);
    entry["feasible"] = row.ours.has_value() && row.baseline.has_value();
    out.push_back(entry);
  }
  return {{"graph", file.name}, {"battery", battery(file.battery)}, {"rows", out}};
}

std::string comparison_table(const std::vector<ComparisonRow>& rows) {
  std::ostringstream os;
  os << "Deadline\tOurs (mA*min)\tBaseline (mA*min)\t% Diff\n";
  for (const auto& row : rows) {
    os << format_number(row.deadline) << "\t";
    if (!row.ours || !row.baseline) {
      os << "infeasible\tinfeasible\t-\n";
      continue;
    }
    os << fixed(*row.ours, 0) << "\t" << fixed(*row.baseline, 0) << "\t" << fixed(*row.percent_diff()) << "\n";
  }
  return os.str();
}

json oracle_report(const GraphFile& file, const OracleResult& r) {
  const auto& g = file.graph;
  return {{"graph", file.name},
          {"deadline_min", g.deadline()},
          {"enumerated", r.enumerated},
          {"best", {{"sigma_mA_min", r.best_sigma}, {"assignment", assignment(g, r.best_sequence, r.best_columns)}}},
          {"worst", {{"sigma_mA_min", r.worst_sigma}, {"assignment", assignment(g, r.worst_sequence, r.worst_columns)}}}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace batsched
