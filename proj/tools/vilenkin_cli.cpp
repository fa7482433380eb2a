// Command-line runner for tower experiments.
//
//   vilenkin <experiment> --config cfg.json [--out DIR] [--format json|csv]
//            [--seed INT] [--depth INT]
//
// Exit status: 0 all checks pass, 2 config error, 3 check failure, 4 I/O error.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "vilenkin/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCheck = 3;
constexpr int kExitIo = 4;

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<int> depth;
};

nlohmann::json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw vilenkin::ConfigError("cannot read config file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw vilenkin::ConfigError(path + ": " + e.what());
  }
}

int run(const std::string& experiment, const Options& o) {
  nlohmann::json j = load(o.config);
  if (!j.is_object()) throw vilenkin::ConfigError("config must be a JSON object");
  if (j.contains("experiment") && j.at("experiment") != experiment)
    throw vilenkin::ConfigError("config names experiment " + j.at("experiment").dump() + " but the subcommand is " + experiment);
  j["experiment"] = experiment;
  if (o.depth) {
    if (!j.contains("tower") || !j.at("tower").is_object()) throw vilenkin::ConfigError("config: missing 'tower'");
    j["tower"]["depth"] = *o.depth;
  }
  if (o.seed) {
    if (!j.contains("function") || !j.at("function").is_object()) throw vilenkin::ConfigError("--seed given but the config has no function");
    j["function"]["seed"] = *o.seed;
  }
  if (!o.out.empty()) j["output"]["dir"] = o.out;
  if (!o.format.empty()) j["output"]["format"] = o.format;

  const vilenkin::ExperimentConfig cfg = vilenkin::parse_config(j);
  const vilenkin::Report report = vilenkin::run_experiment(cfg);
  if (!cfg.out_dir.empty()) {
    try {
      for (const std::string& path : vilenkin::export_report(report, cfg.out_dir, cfg.format)) std::cerr << "wrote " << path << '\n';
    } catch (const std::runtime_error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitIo;
    }
  } else {
    std::cout << vilenkin::dump_report(vilenkin::report_to_json(report));
  }
  for (const auto& [name, ok] : report.checks.items()) std::cerr << (ok.get<bool>() ? "PASS " : "FAIL ") << name << '\n';
  return report.pass ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis experiments on compact Vilenkin groups"};
  app.require_subcommand(1);
  Options o;
  std::string chosen;
  for (const std::string& name : vilenkin::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", o.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory (report goes to stdout when omitted)");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "override the function seed");
    sub->add_option("--depth", o.depth, "override the tower depth");
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  try {
    return run(chosen, o);
  } catch (const vilenkin::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheck;
  }
}
