#include "vilenkin/experiment.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "vilenkin/dual.hpp"
#include "vilenkin/regularity.hpp"
#include "vilenkin/transform.hpp"
#include "vilenkin/vladimirov.hpp"

namespace vilenkin {

namespace {

using nlohmann::json;

constexpr Index kMaxSamples = 1 << 18;
constexpr Index kMaxQuadraticSamples = 6561;  // direct O(|G|^2) cross-checks

double number(const json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params.at(key);
  if (v.is_string() && (v == "inf" || v == "infinity")) return kInfinity;
  if (!v.is_number()) throw ConfigError(std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

double required_number(const json& params, const char* key) {
  if (!params.contains(key)) throw ConfigError(std::string("missing parameter '") + key + "'");
  return number(params, key, 0.0);
}

std::string text(const json& params, const char* key, const std::string& fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_string()) throw ConfigError(std::string("parameter '") + key + "' must be a string");
  return params.at(key).get<std::string>();
}

bool needs_function(const std::string& e) {
  return e == "transform" || e == "modulus" || e == "titchmarsh1" || e == "titchmarsh2" || e == "dini";
}

json fit_json(const DecayFit& f) {
  return {{"exponent", f.exponent}, {"log_power", f.log_power}, {"intercept", f.intercept}, {"residual", f.residual},
          {"first", f.first},       {"last", f.last},           {"points", f.points},       {"valid", f.valid},
          {"note", f.note}};
}

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void check(Report& r, const std::string& name, bool ok) {
  r.checks[name] = ok;
  r.pass = r.pass && ok;
}

PlotSeries log_series(const Tower& t, const std::string& name, const std::string& y_label, const std::vector<double>& v, int first = 0) {
  PlotSeries s{name, "log_index", y_label, {}};
  for (int n = first; n < static_cast<int>(v.size()) && n <= t.depth(); ++n) {
    if (v[static_cast<std::size_t>(n)] > 0)
      s.points.emplace_back(std::log(static_cast<double>(t.quotient_order(n))), std::log(v[static_cast<std::size_t>(n)]));
  }
  return s;
}

std::string csv_cell(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
  }
  return v.dump();
}

void run_dual(const Dual& dual, Report& r) {
  const Tower& t = dual.tower();
  Table tab{"dual", {"label", "dim", "level", "bracket"}, {}};
  std::int64_t sum_d2 = 0;
  bool levels_ok = true;
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const Irrep& x = dual[i];
    tab.rows.push_back({x.label_string(), x.dim, x.level, x.bracket});
    sum_d2 += static_cast<std::int64_t>(x.dim) * x.dim;
    levels_ok = levels_ok && x.level == dual.conductor_level(i);
  }
  r.tables.push_back(std::move(tab));
  r.summary["irreps"] = dual.size();
  r.summary["sum_dim_squared"] = sum_d2;
  r.summary["group_order"] = t.size();
  check(r, "peter_weyl_completeness", sum_d2 == t.size());
  check(r, "level_matches_conductor", levels_ok);
}

void run_transform(const Dual& dual, const FunctionSample& f, Report& r) {
  const Tower& t = dual.tower();
  const DualCoefficients c = forward(dual, f);
  const double sup = std::max(f.cwiseAbs().maxCoeff(), 1e-300);
  const double roundtrip = (inverse(dual, c) - f).cwiseAbs().maxCoeff() / sup;
  const double plancherel = plancherel_residual(dual, f, c);
  r.summary["roundtrip_residual"] = roundtrip;
  r.summary["plancherel_residual"] = plancherel;
  check(r, "roundtrip", roundtrip < 1e-9);
  check(r, "plancherel", plancherel < 1e-10);
  if (t.size() <= 729) {
    const DualCoefficients ref = forward_reference(dual, f);
    double dev = 0;
    for (std::size_t i = 0; i < c.size(); ++i) dev = std::max(dev, (c[i] - ref[i]).cwiseAbs().maxCoeff());
    r.summary["fast_vs_reference"] = dev;
    check(r, "fast_matches_reference", dev < 1e-10 * sup);
  }
  Table coeffs{"coefficients", {"label", "dim", "level", "bracket", "hs_norm"}, {}};
  for (std::size_t i = 0; i < dual.size(); ++i)
    coeffs.rows.push_back({dual[i].label_string(), dual[i].dim, dual[i].level, dual[i].bracket, c[i].norm()});
  r.tables.push_back(std::move(coeffs));
  Table norms{"hausdorff_young", {"p", "lp_norm", "q", "dual_lq_norm", "gap"}, {}};
  bool hy_ok = true;
  for (double p : {1.2, 1.5, 2.0}) {
    const double q = p / (p - 1);
    const double lp = lp_norm(f, p);
    const double lq = dual_lq_norm(dual, c, q);
    norms.rows.push_back({p, lp, q, lq, lp - lq});
    hy_ok = hy_ok && lp - lq >= -1e-10 * std::max(1.0, lp);
  }
  r.tables.push_back(std::move(norms));
  check(r, "hausdorff_young", hy_ok);
}

void run_vt(const Dual& dual, const std::optional<FunctionSample>& f, const json& params, Report& r) {
  const Tower& t = dual.tower();
  const double a = number(params, "a", 1.0);
  const VtMode mode = vt_mode_from_string(text(params, "mode", "group"));
  const VtSymbol s = vt_symbol(t, a, mode);
  const bool exact = mode == VtMode::Group && a == std::floor(a);
  std::vector<Rational> exact_values;
  if (exact) exact_values = vt_eigenvalues_exact(t, static_cast<int>(a));
  Table tab{"eigenvalues", {"level", "index", "eigenvalue", "exact", "normalized"}, {}};
  if (mode == VtMode::Lie) tab.columns.push_back("lie_bracket");
  bool increasing = true;
  for (int n = 0; n <= t.depth(); ++n) {
    const double lam = s(n);
    const double idx = static_cast<double>(t.quotient_order(n));
    std::vector<json> row = {n, t.quotient_order(n), lam, exact ? exact_values[static_cast<std::size_t>(n)].str() : std::string(),
                             n == 0 ? 0.0 : lam / std::pow(idx, s.a)};
    if (mode == VtMode::Lie) row.push_back(s.lie_bracket[static_cast<std::size_t>(n)]);
    tab.rows.push_back(std::move(row));
    if (n > 0) increasing = increasing && lam > s(n - 1);
  }
  r.tables.push_back(std::move(tab));
  check(r, "eigenvalues_increasing", increasing);
  if (exact && t.constant_order()) {
    bool match = true;
    for (int n = 1; n <= t.depth(); ++n)
      match = match && exact_values[static_cast<std::size_t>(n)] == constant_order_eigenvalue(t.kappa(0), static_cast<int>(a), n);
    check(r, "constant_order_formula", match);
  }
  const GammaTable g = gamma(t, s.a);
  r.summary["gamma"] = g.sup;
  r.summary["gamma_closed_form"] = g.closed_form;
  if (!f) return;
  if (t.size() > kMaxQuadraticSamples) {
    r.summary["direct_vs_spectral"] = "skipped: tower too large for the direct sum";
    return;
  }
  const double sup = std::max(f->cwiseAbs().maxCoeff(), 1e-300);
  const double dev = (vt_apply_direct(t, *f, a, mode) - vt_apply_spectral(dual, *f, a, mode)).cwiseAbs().maxCoeff() / sup;
  r.summary["direct_vs_spectral"] = dev;
  check(r, "direct_matches_spectral", dev < 1e-9);
}

void run_modulus(const Dual& dual, const FunctionSample& f, const json& params, Report& r) {
  const Tower& t = dual.tower();
  const double p = number(params, "p", 2.0);
  const PlatonovReport pl = platonov_check(dual, f);
  const ModulusTable& m = pl.table;
  Table tab{"modulus", {"n", "index", "omega", "sqrt_tail", "ratio"}, {}};
  bool mono = true;
  for (std::size_t n = 0; n < m.level.size(); ++n) {
    tab.rows.push_back({m.level[n], m.index[n], m.omega[n], m.sqrt_tail[n], m.ratio[n]});
    if (n > 0) mono = mono && m.omega[n] <= m.omega[n - 1] * (1 + 1e-12) && m.tail[n] <= m.tail[n - 1] * (1 + 1e-12) + 1e-300;
  }
  r.tables.push_back(std::move(tab));
  check(r, "platonov_bound", pl.pass);
  check(r, "monotone", mono);
  r.summary["platonov_violations"] = pl.violations;
  r.plots.push_back(log_series(t, "omega", "log_omega", m.omega));
  r.plots.push_back(log_series(t, "sqrt_tail", "log_sqrt_tail", m.sqrt_tail));
  std::vector<double> omega_p = m.omega;
  if (p != 2) {
    omega_p = modulus_profile(t, f, p);
    Table tp{"modulus_p", {"n", "index", "omega_p"}, {}};
    for (int n = 0; n < t.depth(); ++n) tp.rows.push_back({n, t.quotient_order(n), omega_p[static_cast<std::size_t>(n)]});
    r.tables.push_back(std::move(tp));
  } else if (t.size() <= 729) {
    const std::vector<double> direct = modulus_profile(t, f, 2.0);
    double dev = 0;
    for (std::size_t n = 0; n < direct.size(); ++n) dev = std::max(dev, std::abs(direct[n] - m.omega[n]));
    r.summary["l2_profile_vs_direct"] = dev;
    check(r, "l2_profile_matches_direct", dev < 1e-7 * std::max(1.0, m.omega.front()));
  }
  r.fits["lipschitz"] = fit_json(fit_power_decay(t, omega_p, 0));
}

void run_titchmarsh2(const Dual& dual, const FunctionSample& f, const json& params, Report& r) {
  const Tower& t = dual.tower();
  const double alpha = required_number(params, "alpha");
  const Titchmarsh2Report tr = titchmarsh_second_check(dual, f, alpha);
  Table tab{"titchmarsh2", {"n", "index", "omega", "tail", "omega_reference", "tail_reference"}, {}};
  for (std::size_t n = 0; n < tr.table.level.size(); ++n) {
    const double x = static_cast<double>(tr.table.index[n]);
    tab.rows.push_back({tr.table.level[n], tr.table.index[n], tr.table.omega[n], tr.table.tail[n], std::pow(x, -alpha), std::pow(x, -2 * alpha)});
  }
  r.tables.push_back(std::move(tab));
  r.fits["modulus"] = fit_json(tr.modulus_fit);
  r.fits["tail"] = fit_json(tr.tail_fit);
  r.summary["alpha"] = alpha;
  r.summary["exponent_gap"] = tr.gap;
  r.summary["tolerance"] = kExponentTolerance;
  r.plots.push_back(log_series(t, "omega", "log_omega", tr.table.omega));
  r.plots.push_back(log_series(t, "tail", "log_tail", tr.table.tail));
  check(r, "modulus_tail_equivalence", tr.pass);
}

void run_titchmarsh1(const Dual& dual, const FunctionSample& f, const json& params, Report& r) {
  const Tower& t = dual.tower();
  Titchmarsh1Options o;
  o.p = required_number(params, "p");
  o.alpha = required_number(params, "alpha");
  o.gamma = number(params, "gamma", 0.0);
  if (params.contains("beta_grid")) o.beta_grid = params.at("beta_grid").get<std::vector<double>>();
  const Titchmarsh1Report tr = titchmarsh_first_check(dual, f, o);
  Table s{"s_profile", {"k", "index", "s"}, {}};
  for (int k = 0; k <= t.depth(); ++k) s.rows.push_back({k, t.quotient_order(k), tr.s_profile[static_cast<std::size_t>(k)]});
  r.tables.push_back(std::move(s));
  Table grid{"beta_grid", {"beta", "shell_slope", "weighted_shell_slope", "norm", "weighted_norm"}, {}};
  for (const BetaRow& b : tr.grid) grid.rows.push_back({b.beta, b.slope, b.weighted_slope, b.norm, b.weighted_norm});
  r.tables.push_back(std::move(grid));
  Table partial{"partial_sums", {"n", "index", "partial_sum"}, {}};
  for (int n = 0; n <= t.depth(); ++n) partial.rows.push_back({n, t.quotient_order(n), tr.partial_sums[static_cast<std::size_t>(n)]});
  r.tables.push_back(std::move(partial));
  r.fits["s_decay"] = fit_json(tr.s_fit);
  r.fits["partial_growth"] = fit_json(tr.partial_fit);
  r.summary["p"] = tr.p;
  r.summary["q"] = tr.q;
  r.summary["alpha"] = tr.alpha;
  r.summary["gamma"] = tr.gamma;
  r.summary["s_target"] = tr.s_target;
  r.summary["partial_target"] = tr.partial_target;
  r.summary["beta_star"] = tr.beta_star;
  r.summary["beta_star_weighted"] = tr.beta_star_weighted;
  r.summary["boundary"] = tr.boundary ? json(*tr.boundary) : json(nullptr);
  r.summary["boundary_weighted"] = tr.boundary_weighted ? json(*tr.boundary_weighted) : json(nullptr);
  if (tr.lie_dimension) {
    r.summary["lie_dimension"] = *tr.lie_dimension;
    r.summary["lie_beta_star"] = tr.lie_beta_star;
    r.summary["lie_beta_star_weighted"] = tr.lie_beta_star_weighted;
  }
  r.plots.push_back(log_series(t, "s_profile", "log_s", tr.s_profile));
  check(r, "s_decay", tr.s_pass);
  check(r, "beta_boundary", tr.boundary_pass);
  r.summary["weighted_boundary_within_step"] = tr.boundary_weighted_pass;
}

void run_dini(const Dual& dual, const FunctionSample& f, const json& params, Report& r) {
  const Tower& t = dual.tower();
  const double alpha = required_number(params, "alpha");
  const double nu = required_number(params, "nu");
  const DiniReport dr = dini_lipschitz_check(dual, f, alpha, nu);
  Table tab{"dini", {"n", "index", "omega", "sqrt_tail", "target"}, {}};
  for (std::size_t n = 0; n < dr.table.level.size(); ++n)
    tab.rows.push_back({dr.table.level[n], dr.table.index[n], dr.table.omega[n], dr.table.sqrt_tail[n], dr.target[n]});
  r.tables.push_back(std::move(tab));
  r.fits["modulus"] = fit_json(dr.modulus_fit);
  r.fits["sqrt_tail"] = fit_json(dr.tail_fit);
  r.summary["window_start"] = dr.window_start;
  r.summary["exponent_tolerance"] = kExponentTolerance;
  r.summary["log_power_tolerance"] = kLogPowerTolerance;
  r.plots.push_back(log_series(t, "omega", "log_omega", dr.table.omega));
  check(r, "dini_lipschitz_fit", dr.pass);
}

void run_condition_a(const Dual& dual, const json& params, Report& r) {
  const Tower& t = dual.tower();
  const std::string kind = text(params, "witnesses", "default");
  Table tab{"condition_a", {"k", "witnesses", "c"}, {}};
  bool positive = true;
  for (int k = 0; k < t.depth(); ++k) {
    std::vector<Element> w;
    if (kind == "two-point") {
      const auto [h1, h2] = heisenberg_witnesses(t, k);
      w = {h1, h2};
    } else {
      w = default_witnesses(t, k);
    }
    const double c = condition_a_constant(dual, k, w);
    tab.rows.push_back({k, w.size(), c});
    positive = positive && c > 1e-12;
  }
  r.tables.push_back(std::move(tab));
  r.summary["witness_set"] = kind;
  check(r, "condition_a_positive", positive);
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"dual", "transform", "vt", "modulus", "titchmarsh1", "titchmarsh2", "dini", "condition-a"};
  return names;
}

TowerDescriptor tower_descriptor_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("tower must be an object");
  TowerDescriptor d;
  try {
    d.family = family_from_string(j.at("family").get<std::string>());
    if (j.contains("orders")) d.orders = j.at("orders").get<std::vector<int>>();
    if (j.contains("prime")) d.prime = j.at("prime").get<int>();
    if (j.contains("dim")) d.dim = j.at("dim").get<int>();
    if (j.contains("depth")) d.depth = j.at("depth").get<int>();
    else if (d.family == Family::VilenkinProduct) d.depth = static_cast<int>(d.orders.size());
    else throw ConfigError("tower: missing depth");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("tower: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("tower: ") + e.what());
  }
  return d;
}

json to_json(const TowerDescriptor& d) {
  json j = {{"family", to_string(d.family)}, {"depth", d.depth}};
  if (d.family == Family::VilenkinProduct) {
    j["orders"] = d.orders;
  } else {
    j["prime"] = d.prime;
    j["dim"] = d.dim;
  }
  return j;
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "experiment" && key != "tower" && key != "function" && key != "parameters" && key != "output")
      throw ConfigError("unknown config key: " + key);
  }
  ExperimentConfig cfg;
  if (!j.contains("experiment") || !j.at("experiment").is_string()) throw ConfigError("config: 'experiment' must be a string");
  cfg.experiment = j.at("experiment").get<std::string>();
  if (!j.contains("tower")) throw ConfigError("config: missing 'tower'");
  cfg.tower = tower_descriptor_from_json(j.at("tower"));
  if (j.contains("function") && !j.at("function").is_null()) {
    try {
      cfg.function = function_spec_from_json(j.at("function"));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("function: ") + e.what());
    }
  }
  if (j.contains("parameters")) {
    cfg.parameters = j.at("parameters");
    if (!cfg.parameters.is_object()) throw ConfigError("config: 'parameters' must be an object");
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    if (!o.is_object()) throw ConfigError("config: 'output' must be an object");
    cfg.out_dir = o.value("dir", std::string());
    cfg.format = o.value("format", std::string("json"));
  }
  validate_config(cfg);
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  json j = {{"experiment", cfg.experiment}, {"tower", to_json(cfg.tower)}, {"parameters", cfg.parameters}};
  j["function"] = cfg.function ? to_json(*cfg.function) : json(nullptr);
  j["output"] = {{"dir", cfg.out_dir}, {"format", cfg.format}};
  return j;
}

void validate_config(const ExperimentConfig& cfg) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), cfg.experiment) == names.end()) throw ConfigError("unknown experiment: " + cfg.experiment);
  if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("format must be json or csv");
  std::optional<Tower> t;
  try {
    t = Tower::make(cfg.tower);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("tower: ") + e.what());
  }
  if (t->size() > kMaxSamples) throw ConfigError("tower: too many sample points for an experiment");
  if (needs_function(cfg.experiment) && !cfg.function) throw ConfigError(cfg.experiment + ": a function spec is required");
  if (cfg.function) {
    try {
      validate_function_spec(*t, *cfg.function);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("function: ") + e.what());
    }
  }
  const json& p = cfg.parameters;
  const std::string& e = cfg.experiment;
  if (e == "vt") {
    if (!(number(p, "a", 1.0) > 0)) throw ConfigError("vt: exponent a must be positive");
    const std::string mode = text(p, "mode", "group");
    if (mode != "group" && mode != "lie") throw ConfigError("vt: mode must be group or lie");
    if (mode == "lie" && t->family() == Family::VilenkinProduct) throw ConfigError("vt: lie mode needs a p-adic family");
  } else if (e == "modulus") {
    if (!(number(p, "p", 2.0) >= 1)) throw ConfigError("modulus: p must be >= 1");
  } else if (e == "titchmarsh2") {
    const double alpha = required_number(p, "alpha");
    if (!(alpha > 0 && alpha <= 1)) throw ConfigError("titchmarsh2: alpha must lie in (0, 1]");
  } else if (e == "titchmarsh1") {
    const double pp = required_number(p, "p");
    if (!(pp > 1 && pp <= 2)) throw ConfigError("titchmarsh1: p must lie in (1, 2]");
    const double alpha = required_number(p, "alpha");
    if (!(alpha > 0 && alpha <= 1)) throw ConfigError("titchmarsh1: alpha must lie in (0, 1]");
    const double q = pp / (pp - 1);
    const double gamma = number(p, "gamma", alpha + 0.5 / q);
    if (!(gamma > alpha && gamma < alpha + 1 / q)) throw ConfigError("titchmarsh1: gamma must lie in (alpha, alpha + 1/q)");
    if (p.contains("beta_grid")) {
      const json& g = p.at("beta_grid");
      if (!g.is_array() || g.size() < 2) throw ConfigError("titchmarsh1: beta_grid must list at least two values");
      double prev = 0;
      for (const json& b : g) {
        if (!b.is_number() || b.get<double>() <= prev) throw ConfigError("titchmarsh1: beta_grid must be positive and increasing");
        prev = b.get<double>();
      }
    }
  } else if (e == "dini") {
    if (!(required_number(p, "alpha") > 0)) throw ConfigError("dini: alpha must be positive");
    required_number(p, "nu");
    if (t->depth() < 5) throw ConfigError("dini: the two-parameter fit needs depth >= 5");
  } else if (e == "condition-a") {
    const std::string w = text(p, "witnesses", "default");
    if (w != "default" && w != "two-point") throw ConfigError("condition-a: witnesses must be default or two-point");
    if (w == "two-point" && t->family() != Family::Heisenberg) throw ConfigError("condition-a: the two-point witness recipe is Heisenberg-only");
  }
}

Report run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  Report r;
  r.config = cfg;
  r.started_at = now_utc();
  const auto start = std::chrono::steady_clock::now();
  const Dual dual(Tower::make(cfg.tower));
  std::optional<FunctionSample> f;
  if (cfg.function) f = generate_function(dual, *cfg.function);
  const std::string& e = cfg.experiment;
  if (e == "dual") run_dual(dual, r);
  else if (e == "transform") run_transform(dual, *f, r);
  else if (e == "vt") run_vt(dual, f, cfg.parameters, r);
  else if (e == "modulus") run_modulus(dual, *f, cfg.parameters, r);
  else if (e == "titchmarsh2") run_titchmarsh2(dual, *f, cfg.parameters, r);
  else if (e == "titchmarsh1") run_titchmarsh1(dual, *f, cfg.parameters, r);
  else if (e == "dini") run_dini(dual, *f, cfg.parameters, r);
  else run_condition_a(dual, cfg.parameters, r);
  r.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json report_to_json(const Report& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["library_version"] = kLibraryVersion;
  j["experiment"] = r.config.experiment;
  j["config"] = to_json(r.config);
  j["seed"] = r.config.function && r.config.function->seed ? json(*r.config.function->seed) : json(nullptr);
  json tables = json::object();
  for (const Table& t : r.tables) tables[t.name] = {{"columns", t.columns}, {"rows", t.rows}};
  j["tables"] = tables;
  json plots = json::object();
  for (const PlotSeries& s : r.plots) {
    json pts = json::array();
    for (const auto& [x, y] : s.points) pts.push_back({x, y});
    plots[s.name] = {{"x", s.x_label}, {"y", s.y_label}, {"points", pts}};
  }
  j["plots"] = plots;
  j["fits"] = r.fits;
  j["checks"] = r.checks;
  j["summary"] = r.summary;
  j["pass"] = r.pass;
  j["timestamp"] = {{"started_at", r.started_at}, {"wall_clock_seconds", r.wall_clock_seconds}};
  return j;
}

json deterministic_view(const json& report) {
  json j = report;
  j.erase("timestamp");
  return j;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

std::string table_to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << '\n';
  }
  return os.str();
}

std::vector<std::string> export_report(const Report& r, const std::string& dir, const std::string& format) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& body) {
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << body;
    if (!out) throw std::runtime_error("failed writing " + path);
    written.push_back(path);
  };
  if (format == "json") {
    write("report.json", dump_report(report_to_json(r)));
  } else if (format == "csv") {
    for (const Table& t : r.tables) write(t.name + ".csv", table_to_csv(t));
  } else {
    throw std::invalid_argument("format must be json or csv");
  }
  for (const PlotSeries& s : r.plots) {
    std::ostringstream os;
    os << s.x_label << ',' << s.y_label << '\n';
    for (const auto& [x, y] : s.points) os << json(x).dump() << ',' << json(y).dump() << '\n';
    write(s.name + ".plot.csv", os.str());
  }
  return written;
}

}  // namespace vilenkin
