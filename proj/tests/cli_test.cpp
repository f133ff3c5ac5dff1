#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "batsched/graph_io.hpp"
#include "test_support.hpp"

using batsched::testing::run_cli;
using batsched::testing::temp_file;

namespace {

std::string g3() { return "\"" + batsched::testing::data_path("g3.json") + "\""; }

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("cli validate") {
  const auto ok = run_cli("validate " + g3());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "ok\n");

  const auto cyclic = temp_file("cycle.json", R"({"name": "c", "deadline_min": 10, "tasks": [
    {"id": "A", "parents": ["B"], "design_points": [{"current_mA": 5, "duration_min": 1}]},
    {"id": "B", "parents": ["A"], "design_points": [{"current_mA": 5, "duration_min": 1}]}]})");
  const auto bad = run_cli("validate " + cyclic.string());
  CHECK(bad.exit_code != 0);
  CHECK(bad.out.find("cycle") != std::string::npos);
  CHECK(bad.out.find("A") != std::string::npos);

  const auto garbled = temp_file("garbled.json", "{\"name\": ");
  CHECK(run_cli("validate " + garbled.string()).exit_code == 2);
  CHECK(run_cli("validate /nonexistent.json").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("cli schedule") {
  const auto r = run_cli("schedule " + g3());
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["converged"] == true);
  CHECK(doc["sigma_mA_min"].get<double>() < 16353);
  CHECK(doc["iterations"].size() == 3);
  CHECK(doc["assignment"].size() == 15);
  CHECK(doc["iterations"][0]["windows"].size() == 4);

  CHECK(run_cli("schedule " + g3() + " --deadline 1").exit_code == 3);

  const auto capped = nlohmann::json::parse(run_cli("schedule " + g3() + " --max-iterations 1").out);
  CHECK(capped["converged"] == false);
  CHECK(capped["iterations"].size() == 1);

  const auto table = run_cli("schedule " + g3() + " --format table");
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("Win 4:5") != std::string::npos);
  CHECK(table.out.find("converged\tyes") != std::string::npos);

  const auto par = run_cli("schedule " + g3() + " --parallel");
  CHECK(par.out == r.out);

  const auto out_path = std::filesystem::temp_directory_path() / "batsched_test_out.json";
  CHECK(run_cli("schedule " + g3() + " --out " + out_path.string()).exit_code == 0);
  CHECK(batsched::testing::read_file(out_path) == r.out);

  CHECK(run_cli("schedule " + g3() + " --weight-mode energy").exit_code == 0);
  CHECK(run_cli("schedule " + g3() + " --weight-mode bogus").exit_code == 2);
  CHECK(run_cli("schedule " + g3() + " --beta -1").exit_code == 2);
}

TEST_CASE("cli profile and lifetime") {
  const auto p = run_cli("profile " + g3());
  REQUIRE(p.exit_code == 0);
  CHECK(count_lines(p.out) == 16);
  const auto profile = batsched::parse_profile_csv(p.out);
  const auto doc = nlohmann::json::parse(run_cli("schedule " + g3()).out);
  CHECK(profile.total_duration() == doctest::Approx(doc["delta_min"].get<double>()).epsilon(1e-12));

  const auto survive = run_cli("lifetime " + g3() + " --alpha 1e9");
  CHECK(survive.exit_code == 0);
  CHECK(survive.out == "survives-profile\n");

  const auto dies = run_cli("lifetime " + g3() + " --alpha 5000");
  CHECK(dies.exit_code == 0);
  const double t = std::stod(dies.out);
  CHECK(t > 0);
  CHECK(t < doc["delta_min"].get<double>());

  CHECK(run_cli("lifetime " + g3()).exit_code == 2);
}

TEST_CASE("cli compare and baseline") {
  const auto c = run_cli("compare " + g3() + " --deadlines 100,150,230");
  REQUIRE(c.exit_code == 0);
  const auto doc = nlohmann::json::parse(c.out);
  REQUIRE(doc["rows"].size() == 3);
  for (const auto& row : doc["rows"]) {
    CHECK(row["feasible"] == true);
    CHECK(row["ours_sigma_mA_min"].get<double>() <= row["baseline_sigma_mA_min"].get<double>());
  }

  const auto mixed = run_cli("compare " + g3() + " --deadlines 50,230 --format table");
  CHECK(mixed.exit_code == 0);
  CHECK(mixed.out.find("infeasible") != std::string::npos);
  CHECK(count_lines(mixed.out) == 3);

  const auto single = temp_file("single.json", R"({"name": "s", "deadline_min": 10, "tasks": [
    {"id": "x", "parents": [], "design_points": [{"current_mA": 300, "duration_min": 1},
      {"current_mA": 100, "duration_min": 2}, {"current_mA": 20, "duration_min": 4}]}]})");
  const auto b = nlohmann::json::parse(run_cli("baseline " + single.string()).out);
  CHECK(b["assignment"][0]["design_point"] == 3);

  const auto o = run_cli("oracle " + single.string());
  CHECK(o.exit_code == 0);
  CHECK(nlohmann::json::parse(o.out)["enumerated"] == 3);
  CHECK(run_cli("oracle " + g3()).exit_code == 2);
}
