#pragma once

// Machine (JSON) and human (table) renderings of scheduler output.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "batsched/baseline.hpp"
#include "batsched/driver.hpp"
#include "batsched/graph_io.hpp"

namespace batsched {

// "ws:m" with 1-based columns, e.g. "4:5".
std::string window_label(std::size_t start, std::size_t design_points);

nlohmann::json schedule_report(const GraphFile& file, const ScheduleResult& result);
std::string schedule_table(const GraphFile& file, const ScheduleResult& result);

nlohmann::json baseline_report(const GraphFile& file, const BaselineResult& result);
std::string baseline_table(const GraphFile& file, const BaselineResult& result);

struct ComparisonRow {
  double deadline = 0.0;
  std::optional<double> ours;      // nullopt when infeasible
  std::optional<double> baseline;
  std::optional<double> ours_delta;
  std::optional<double> baseline_delta;

  // (baseline - ours) / ours, in percent.
  std::optional<double> percent_diff() const;
};

nlohmann::json comparison_report(const GraphFile& file, const std::vector<ComparisonRow>& rows);
std::string comparison_table(const std::vector<ComparisonRow>& rows);

nlohmann::json oracle_report(const GraphFile& file, const OracleResult& result);

// Stable text: sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& doc);

}  // namespace batsched
