#pragma once

// Graph file (JSON) and discharge-profile (CSV) formats.
//
// Graph file:
//   {
//     "name": "G3",
//     "deadline_min": 230,
//     "battery": {"beta": 0.273, "series_terms": 10, "alpha_mA_min": 40000},   // alpha optional
//     "tasks": [
//       {"id": "T1", "label": "", "parents": [],
//        "design_points": [{"current_mA": 917, "duration_min": 7.3}, ...]},   // fastest first
//       ...
//     ]
//   }
//
// Profile CSV: header "start_min,duration_min,current_mA", one row per interval, LF.

#include <filesystem>
#include <string>
#include <string_view>

#include "batsched/battery_model.hpp"
#include "batsched/taskgraph.hpp"

namespace batsched {

struct GraphFile {
  std::string name;
  TaskGraph graph;
  BatteryParams battery;

  bool operator==(const GraphFile& other) const {
    return name == other.name && graph == other.graph && battery.beta == other.battery.beta &&
           battery.alpha == other.battery.alpha && battery.series_terms == other.battery.series_terms;
  }
};

// Throws ParseError with line/column (syntax) or field path (schema) context.
// Structural checks (cycles, ordering) are left to validate().
GraphFile parse_graph_json(std::string_view text);
GraphFile load_graph_file(const std::filesystem::path& path);

// Canonical JSON: two-space indent, sorted keys, trailing newline.
std::string to_json(const GraphFile& file);

std::string profile_to_csv(const DischargeProfile& profile);
DischargeProfile parse_profile_csv(std::string_view text);

// Shortest representation that parses back to the same double.
std::string format_number(double value);

}  // namespace batsched
