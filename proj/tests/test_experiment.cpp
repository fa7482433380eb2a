#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "vilenkin/experiment.hpp"

using namespace vilenkin;
using nlohmann::json;

namespace {

json base_config(const std::string& experiment) {
  return {{"experiment", experiment},
          {"tower", {{"family", "padic"}, {"prime", 3}, {"depth", 5}}},
          {"function", {{"family", "random_fourier"}, {"params", {{"alpha", 0.5}}}, {"seed", 3}}},
          {"parameters", json::object()}};
}

void expect_config_error(json j) { CHECK_THROWS_AS(parse_config(j), ConfigError); }

}  // namespace

TEST_CASE("malformed configs are rejected") {
  expect_config_error(json::array());
  json unknown = base_config("dual");
  unknown["extra"] = 1;
  expect_config_error(unknown);
  json no_tower = base_config("dual");
  no_tower.erase("tower");
  expect_config_error(no_tower);
  expect_config_error(base_config("fourier"));
  json bad_prime = base_config("dual");
  bad_prime["tower"]["prime"] = 4;
  expect_config_error(bad_prime);
  json huge = base_config("dual");
  huge["tower"]["depth"] = 40;
  expect_config_error(huge);
  json no_function = base_config("transform");
  no_function.erase("function");
  expect_config_error(no_function);
  json no_seed = base_config("transform");
  no_seed["function"].erase("seed");
  expect_config_error(no_seed);
  json format = base_config("dual");
  format["output"] = {{"format", "xml"}};
  expect_config_error(format);
}

TEST_CASE("theorem hypotheses are enforced") {
  json t2 = base_config("titchmarsh2");
  t2["parameters"] = {{"alpha", 1.5}};
  expect_config_error(t2);
  json t1 = base_config("titchmarsh1");
  t1["parameters"] = {{"p", 2.5}, {"alpha", 0.5}};
  expect_config_error(t1);
  t1["parameters"] = {{"p", 2.0}, {"alpha", 0.5}, {"gamma", 1.2}};
  expect_config_error(t1);
  t1["parameters"] = {{"p", 2.0}, {"alpha", 0.5}, {"beta_grid", {1.0, 0.5}}};
  expect_config_error(t1);
  json vt = base_config("vt");
  vt["parameters"] = {{"a", -1.0}};
  expect_config_error(vt);
  vt["tower"] = {{"family", "vilenkin"}, {"orders", {2, 3}}};
  vt["parameters"] = {{"a", 1.0}, {"mode", "lie"}};
  expect_config_error(vt);
  json dini = base_config("dini");
  dini["tower"]["depth"] = 3;
  dini["parameters"] = {{"alpha", 0.5}, {"nu", 1.0}};
  expect_config_error(dini);
  json ca = base_config("condition-a");
  ca["parameters"] = {{"witnesses", "two-point"}};
  expect_config_error(ca);
}

TEST_CASE("every experiment runs and reports checks") {
  std::map<std::string, json> params = {{"dual", json::object()},
                                        {"transform", json::object()},
                                        {"vt", {{"a", 1.0}}},
                                        {"modulus", {{"p", 2.0}}},
                                        {"titchmarsh2", {{"alpha", 0.5}}},
                                        {"titchmarsh1", {{"p", 2.0}, {"alpha", 0.5}}},
                                        {"dini", {{"alpha", 0.5}, {"nu", 1.0}}},
                                        {"condition-a", json::object()}};
  for (const std::string& name : experiment_names()) {
    json j = base_config(name);
    j["parameters"] = params.at(name);
    if (name == "dini") {
      j["tower"] = {{"family", "padic"}, {"prime", 5}, {"depth", 7}};
      j["function"] = {{"family", "dini"}, {"params", {{"alpha", 0.5}, {"nu", 1.0}}}, {"seed", 1}};
    }
    const Report r = run_experiment(parse_config(j));
    CHECK_MESSAGE(r.pass, name);
    CHECK_MESSAGE(!r.checks.empty(), name);
    const json out = report_to_json(r);
    CHECK(out.at("schema_version") == kReportSchemaVersion);
    CHECK(out.at("library_version") == kLibraryVersion);
    CHECK(out.at("experiment") == name);
    CHECK(out.at("config").at("tower") == to_json(r.config.tower));
    CHECK(out.contains("timestamp"));
    CHECK(out.at("pass") == true);
  }
}

TEST_CASE("reports are deterministic for a fixed config and seed") {
  json j = base_config("titchmarsh2");
  j["parameters"] = {{"alpha", 0.5}};
  const ExperimentConfig cfg = parse_config(j);
  const json a = deterministic_view(report_to_json(run_experiment(cfg)));
  const json b = deterministic_view(report_to_json(run_experiment(cfg)));
  CHECK(dump_report(a) == dump_report(b));
  CHECK_FALSE(a.contains("timestamp"));
  CHECK(a.at("seed") == 3);
  const std::string text = dump_report(a);
  CHECK(dump_report(json::parse(text)) == text);
  CHECK(to_json(parse_config(to_json(cfg))) == to_json(cfg));
}

TEST_CASE("the Heisenberg two-point witness set is reported as failing") {
  json j = base_config("condition-a");
  j["tower"] = {{"family", "heisenberg"}, {"prime", 3}, {"dim", 1}, {"depth", 2}};
  j["parameters"] = {{"witnesses", "two-point"}};
  j.erase("function");
  CHECK_FALSE(run_experiment(parse_config(j)).pass);
  j["parameters"] = {{"witnesses", "default"}};
  CHECK(run_experiment(parse_config(j)).pass);
}

TEST_CASE("export writes JSON and CSV files") {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "vilenkin_export_test";
  std::filesystem::remove_all(dir);
  json j = base_config("modulus");
  j["parameters"] = {{"p", 2.0}};
  const Report r = run_experiment(parse_config(j));
  const std::vector<std::string> json_files = export_report(r, dir.string(), "json");
  REQUIRE(std::filesystem::exists(dir / "report.json"));
  std::ifstream in(dir / "report.json");
  const json back = json::parse(in);
  CHECK(back.at("experiment") == "modulus");
  export_report(r, dir.string(), "csv");
  REQUIRE(std::filesystem::exists(dir / "modulus.csv"));
  std::ifstream csv(dir / "modulus.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "n,index,omega,sqrt_tail,ratio");
  CHECK(std::filesystem::exists(dir / "omega.plot.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("table to CSV quotes strings") {
  const Table t{"t", {"label", "x"}, {{std::string("(1 2)"), 0.5}, {std::string("a,b"), 2}}};
  const std::string csv = table_to_csv(t);
  CHECK(csv.find("label,x\n") == 0);
  CHECK(csv.find("\"a,b\"") != std::string::npos);
}
