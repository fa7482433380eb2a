#include "vilenkin/families.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vilenkin {

namespace {

double param(const FunctionSpec& spec, const char* key) {
  if (!spec.params.contains(key)) throw std::invalid_argument(spec.family + ": missing parameter '" + key + "'");
  const auto& v = spec.params.at(key);
  if (!v.is_number()) throw std::invalid_argument(spec.family + ": parameter '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t require_seed(const FunctionSpec& spec) {
  if (!spec.seed) throw std::invalid_argument(spec.family + ": a seed is required");
  return *spec.seed;
}

// Fill every nontrivial block with isotropic noise and rescale each level
// shell s = 1..N to the energy tail(s-1) - tail(s).
DualCoefficients shaped_noise(const Dual& dual, const std::vector<double>& tails, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  DualCoefficients c = zero_coefficients(dual);
  const int n_max = dual.tower().depth();
  std::vector<double> energy(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const Irrep& r = dual[i];
    if (r.level == 0) continue;
    const double sd = std::sqrt(0.5 / r.dim);
    for (Eigen::Index a = 0; a < c[i].rows(); ++a)
      for (Eigen::Index b = 0; b < c[i].cols(); ++b) c[i](a, b) = {sd * normal(rng), sd * normal(rng)};
    energy[static_cast<std::size_t>(r.level)] += r.dim * c[i].squaredNorm();
  }
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const int s = dual[i].level;
    if (s == 0) continue;
    const double want = tails[static_cast<std::size_t>(s - 1)] - tails[static_cast<std::size_t>(s)];
    const double have = energy[static_cast<std::size_t>(s)];
    c[i] *= have > 0 ? std::sqrt(std::max(want, 0.0) / have) : 0.0;
  }
  return c;
}

}  // namespace

FunctionSpec function_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("function spec must be an object");
  FunctionSpec spec;
  spec.family = j.at("family").get<std::string>();
  if (j.contains("params")) spec.params = j.at("params");
  if (!spec.params.is_object()) throw std::invalid_argument("function params must be an object");
  if (j.contains("seed") && !j.at("seed").is_null()) {
    if (!j.at("seed").is_number_integer() || j.at("seed").get<std::int64_t>() < 0)
      throw std::invalid_argument("seed must be a nonnegative integer");
    spec.seed = j.at("seed").get<std::uint64_t>();
  }
  return spec;
}

nlohmann::json to_json(const FunctionSpec& spec) {
  nlohmann::json j = {{"family", spec.family}, {"params", spec.params}};
  j["seed"] = spec.seed ? nlohmann::json(*spec.seed) : nlohmann::json(nullptr);
  return j;
}

void validate_function_spec(const Tower& t, const FunctionSpec& spec) {
  const std::string& f = spec.family;
  if (f == "indicator") {
    const double m = param(spec, "m");
    if (m != std::floor(m) || m < 0 || m >= t.depth()) throw std::invalid_argument("indicator: m must be an integer in [0, N)");
  } else if (f == "radial") {
    if (!(param(spec, "b") > 0)) throw std::invalid_argument("radial: b must be positive");
  } else if (f == "random_fourier") {
    if (!(param(spec, "alpha") > 0)) throw std::invalid_argument("random_fourier: alpha must be positive");
    require_seed(spec);
  } else if (f == "dini") {
    if (!(param(spec, "alpha") > 0)) throw std::invalid_argument("dini: alpha must be positive");
    param(spec, "nu");
    require_seed(spec);
  } else if (f == "dirichlet") {
    if (!(param(spec, "alpha") > 0)) throw std::invalid_argument("dirichlet: alpha must be positive");
    const double p = param(spec, "p");
    if (!(p >= 1)) throw std::invalid_argument("dirichlet: p must be >= 1");
    require_seed(spec);
  } else if (f == "values") {
    const auto& re = spec.params.at("re");
    if (!re.is_array() || static_cast<Index>(re.size()) != t.size())
      throw std::invalid_argument("values: 're' must list one value per sample point");
    if (spec.params.contains("im") && spec.params.at("im").size() != re.size())
      throw std::invalid_argument("values: 'im' must match 're' in length");
  } else {
    throw std::invalid_argument("unknown function family: " + f);
  }
}

FunctionSample generate_function(const Dual& dual, const FunctionSpec& spec) {
  const Tower& t = dual.tower();
  validate_function_spec(t, spec);
  const std::string& f = spec.family;
  if (f == "indicator") return indicator(t, static_cast<int>(param(spec, "m")));
  if (f == "radial") return radial(t, param(spec, "b"));
  if (f == "random_fourier") return random_fourier(dual, param(spec, "alpha"), *spec.seed);
  if (f == "dini") return dini_function(dual, param(spec, "alpha"), param(spec, "nu"), *spec.seed);
  if (f == "dirichlet") return dirichlet_function(t, param(spec, "alpha"), param(spec, "p"), *spec.seed);
  const auto& re = spec.params.at("re");
  FunctionSample out(t.size());
  for (Index i = 0; i < t.size(); ++i) {
    const double im = spec.params.contains("im") ? spec.params.at("im")[static_cast<std::size_t>(i)].get<double>() : 0.0;
    out[i] = {re[static_cast<std::size_t>(i)].get<double>(), im};
  }
  return out;
}

FunctionSample indicator(const Tower& t, int m) {
  if (m < 0 || m >= t.depth()) throw std::invalid_argument("indicator: m must lie in [0, N)");
  const std::vector<int> depth = t.depth_table();
  FunctionSample f(t.size());
  for (Index i = 0; i < t.size(); ++i) f[i] = depth[static_cast<std::size_t>(i)] >= m ? 1.0 : 0.0;
  return f;
}

FunctionSample radial(const Tower& t, double b) {
  if (!(b > 0)) throw std::invalid_argument("radial: b must be positive");
  const std::vector<int> depth = t.depth_table();
  FunctionSample f(t.size());
  for (Index i = 0; i < t.size(); ++i) {
    const int d = depth[static_cast<std::size_t>(i)];
    f[i] = d == t.depth() ? 0.0 : std::pow(static_cast<double>(t.quotient_order(d)), -b);
  }
  return f;
}

DualCoefficients random_fourier_coefficients(const Dual& dual, double alpha, std::uint64_t seed) {
  if (!(alpha > 0)) throw std::invalid_argument("random_fourier: alpha must be positive");
  const Tower& t = dual.tower();
  std::vector<double> tails(static_cast<std::size_t>(t.depth()) + 1, 0.0);
  for (int k = 0; k < t.depth(); ++k) tails[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(t.quotient_order(k)), -2 * alpha);
  return shaped_noise(dual, tails, seed);
}

FunctionSample random_fourier(const Dual& dual, double alpha, std::uint64_t seed) {
  return inverse(dual, random_fourier_coefficients(dual, alpha, seed));
}

std::vector<double> dini_tail_targets(const Tower& t, double alpha, double nu) {
  const int n_max = t.depth();
  std::vector<double> tails(static_cast<std::size_t>(n_max) + 1, 0.0);
  double envelope = std::numeric_limits<double>::infinity();
  for (int k = 1; k < n_max; ++k) {
    const double lx = std::log(static_cast<double>(t.quotient_order(k)));
    envelope = std::min(envelope, std::exp(-2 * alpha * lx) * std::pow(lx, 2 * nu));
    tails[static_cast<std::size_t>(k)] = envelope;
  }
  tails[0] = n_max > 1 ? tails[1] : 1.0;
  return tails;
}

DualCoefficients dini_coefficients(const Dual& dual, double alpha, double nu, std::uint64_t seed) {
  if (!(alpha > 0)) throw std::invalid_argument("dini: alpha must be positive");
  return shaped_noise(dual, dini_tail_targets(dual.tower(), alpha, nu), seed);
}

FunctionSample dini_function(const Dual& dual, double alpha, double nu, std::uint64_t seed) {
  return inverse(dual, dini_coefficients(dual, alpha, nu, seed));
}

FunctionSample dirichlet_function(const Tower& t, double alpha, double p, std::uint64_t seed) {
  if (!(alpha > 0) || !(p >= 1)) throw std::invalid_argument("dirichlet: need alpha > 0 and p >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::uniform_int_distribution<Index> pick(0, t.size() - 1);
  FunctionSample f = FunctionSample::Zero(t.size());
  for (int m = 0; m <= t.depth(); ++m) {
    const double amp = std::pow(static_cast<double>(t.quotient_order(m)), -(alpha - 1 / p));
    const std::complex<double> term = std::polar(amp, angle(rng));
    const Element ginv = t.inverse(t.at(pick(rng)));
    for (Index i = 0; i < t.size(); ++i) {
      if (t.depth_of(t.multiply(ginv, t.at(i))) >= m) f[i] += term;
    }
  }
  return f;
}

}  // namespace vilenkin
