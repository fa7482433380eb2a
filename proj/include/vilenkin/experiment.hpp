#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vilenkin/families.hpp"
#include "vilenkin/tower.hpp"

namespace vilenkin {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kLibraryVersion = "1.0.0";

/// Raised for malformed configs and violated theorem hypotheses.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& experiment_names();

struct ExperimentConfig {
  std::string experiment;
  TowerDescriptor tower;
  std::optional<FunctionSpec> function;
  nlohmann::json parameters = nlohmann::json::object();
  std::string out_dir;
  std::string format = "json";
};

TowerDescriptor tower_descriptor_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TowerDescriptor& d);

/// Parse and validate; throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);
/// Range checks against the hypotheses of the selected experiment.
void validate_config(const ExperimentConfig& cfg);

/// A column-named table; cells are numbers or strings.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

/// (x, y) series for external plotting, typically log|G/G_n| against a log quantity.
struct PlotSeries {
  std::string name;
  std::string x_label, y_label;
  std::vector<std::pair<double, double>> points;
};

struct Report {
  ExperimentConfig config;
  std::vector<Table> tables;
  std::vector<PlotSeries> plots;
  nlohmann::json fits = nlohmann::json::object();
  nlohmann::json checks = nlohmann::json::object();  // name -> bool
  nlohmann::json summary = nlohmann::json::object();
  bool pass = true;
  double wall_clock_seconds = 0;
  std::string started_at;
};

Report run_experiment(const ExperimentConfig& cfg);

/// Schema-versioned JSON; keys sorted. The "timestamp" member holds the
/// start time and wall clock and is the only nondeterministic part.
nlohmann::json report_to_json(const Report& r);
/// The report without its "timestamp" member.
nlohmann::json deterministic_view(const nlohmann::json& report);
std::string dump_report(const nlohmann::json& report);

/// Writes report.json or one CSV per table, plus <series>.plot.csv files.
/// Returns the written paths.
std::vector<std::string> export_report(const Report& r, const std::string& dir, const std::string& format);

std::string table_to_csv(const Table& t);

}  // namespace vilenkin
