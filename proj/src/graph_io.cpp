#include "batsched/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "batsched/errors.hpp"

namespace batsched {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key + ": missing field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path + ": expected a number");
  return v.get<double>();
}

std::string string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path + ": expected a string");
  return v.get<std::string>();
}

}  // namespace

GraphFile parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("$: expected an object");

  GraphFile out;
  if (auto it = doc.find("name"); it != doc.end()) out.name = string(*it, "$.name");
  const double deadline = number(field(doc, "deadline_min", "$"), "$.deadline_min");

  if (auto it = doc.find("battery"); it != doc.end()) {
    const json& b = *it;
    if (!b.is_object()) throw ParseError("$.battery: expected an object");
    out.battery.beta = number(field(b, "beta", "$.battery"), "$.battery.beta");
    if (auto a = b.find("alpha_mA_min"); a != b.end() && !a->is_null())
      out.battery.alpha = number(*a, "$.battery.alpha_mA_min");
    if (auto s = b.find("series_terms"); s != b.end()) {
      if (!s->is_number_integer()) throw ParseError("$.battery.series_terms: expected an integer");
      out.battery.series_terms = s->get<int>();
    }
  }

  const json& tasks = field(doc, "tasks", "$");
  if (!tasks.is_array()) throw ParseError("$.tasks: expected an array");
  std::vector<Task> parsed;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string path = "$.tasks[" + std::to_string(i) + "]";
    const json& t = tasks[i];
    Task task;
    task.id = string(field(t, "id", path), path + ".id");
    if (auto it = t.find("label"); it != t.end()) task.label = string(*it, path + ".label");

    if (auto it = t.find("parents"); it != t.end()) {
      if (!it->is_array()) throw ParseError(path + ".parents: expected an array");
      for (std::size_t k = 0; k < it->size(); ++k)
        edges.push_back({string((*it)[k], path + ".parents[" + std::to_string(k) + "]"), task.id});
    }

    const json& dps = field(t, "design_points", path);
    if (!dps.is_array()) throw ParseError(path + ".design_points: expected an array");
    for (std::size_t k = 0; k < dps.size(); ++k) {
      const std::string dp_path = path + ".design_points[" + std::to_string(k) + "]";
      task.design_points.push_back({number(field(dps[k], "current_mA", dp_path), dp_path + ".current_mA"),
                                    number(field(dps[k], "duration_min", dp_path), dp_path + ".duration_min")});
    }
    parsed.push_back(std::move(task));
  }

  out.graph = TaskGraph(std::move(parsed), std::move(edges), deadline);
  return out;
}

GraphFile load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph_json(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string to_json(const GraphFile& file) {
  json doc;
  doc["name"] = file.name;
  doc["deadline_min"] = file.graph.deadline();
  json battery{{"beta", file.battery.beta}, {"series_terms", file.battery.series_terms}};
  if (file.battery.alpha) battery["alpha_mA_min"] = *file.battery.alpha;
  doc["battery"] = battery;

  json tasks = json::array();
  for (const auto& t : file.graph.tasks()) {
    json parents = json::array();
    for (const auto& e : file.graph.edges())
      if (e.child == t.id) parents.push_back(e.parent);
    json dps = json::array();
    for (const auto& dp : t.design_points) dps.push_back({{"current_mA", dp.current}, {"duration_min", dp.duration}});
    tasks.push_back({{"id", t.id}, {"label", t.label}, {"parents", parents}, {"design_points", dps}});
  }
  doc["tasks"] = tasks;
  return doc.dump(2) + "\n";
}

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

std::string profile_to_csv(const DischargeProfile& profile) {
  std::string out = "start_min,duration_min,current_mA\n";
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const auto& iv = profile.intervals()[k];
    out += format_number(profile.start_of(k)) + "," + format_number(iv.duration) + "," +
           format_number(iv.current) + "\n";
  }
  return out;
}

namespace {

double parse_cell(std::string_view cell, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v))
    throw ParseError("profile line " + std::to_string(line) + ": malformed number '" + std::string(cell) + "'");
  return v;
}

}  // namespace

DischargeProfile parse_profile_csv(std::string_view text) {
  DischargeProfile profile;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "start_min,duration_min,current_mA")
        throw ParseError("profile line 1: expected header 'start_min,duration_min,current_mA'");
      header_seen = true;
      continue;
    }

    std::string_view cells[3];
    for (int c = 0; c < 3; ++c) {
      const auto comma = line.find(',');
      if ((c < 2) == (comma == std::string_view::npos))
        throw ParseError("profile line " + std::to_string(line_no) + ": expected 3 columns");
      cells[c] = line.substr(0, comma);
      line = comma == std::string_view::npos ? std::string_view{} : line.substr(comma + 1);
    }
    const double start = parse_cell(cells[0], line_no);
    const double duration = parse_cell(cells[1], line_no);
    const double current = parse_cell(cells[2], line_no);
    const double expected = profile.total_duration();
    if (std::abs(start - expected) > 1e-9 * std::max(1.0, expected))
      throw ParseError("profile line " + std::to_string(line_no) + ": intervals must be back-to-back");
    try {
      profile.append(current, duration);
    } catch (const std::invalid_argument& e) {
      throw ParseError("profile line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!header_seen) throw ParseError("profile: missing header");
  return profile;
}

}  // namespace batsched
