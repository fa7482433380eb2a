#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vilenkin/dual.hpp"
#include "vilenkin/tower.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

/// omega_p(f, n) = max over h in G_n of ||f(h.) - f||_p, by direct translation.
double modulus(const Tower& t, const FunctionSample& f, int n, double p = 2.0);
/// omega_p(f, n) for n = 0..N-1, one pass over all translations.
std::vector<double> modulus_profile(const Tower& t, const FunctionSample& f, double p = 2.0);
/// L^2 profile through the autocorrelation R = inverse(fhat^* fhat):
/// ||f(h.) - f||_2^2 = 2 ||f||_2^2 - 2 Re R(h).
std::vector<double> modulus_profile_l2(const Dual& dual, const DualCoefficients& c);

/// sum over irreps with bracket > |G/G_k| of d ||c||_HS^2.
double tail_sum(const Dual& dual, const DualCoefficients& c, int k);
/// tail_sum for k = 0..N.
std::vector<double> tail_profile(const Dual& dual, const DualCoefficients& c);

struct ModulusTable {
  std::vector<int> level;
  std::vector<std::int64_t> index;  // |G/G_n|
  std::vector<double> omega;
  std::vector<double> tail;
  std::vector<double> sqrt_tail;
  std::vector<double> ratio;  // sqrt_tail / omega, 0 when omega = 0
};

ModulusTable modulus_table(const Dual& dual, const FunctionSample& f, double p = 2.0);

struct PlatonovReport {
  ModulusTable table;
  std::vector<int> violations;  // levels where omega/2 <= sqrt(tail) <= omega/sqrt(2) fails
  bool pass = true;
};

/// Two-sided bound omega/2 <= sqrt(tail) <= omega/sqrt(2) at every level n < N.
PlatonovReport platonov_check(const Dual& dual, const FunctionSample& f, double tolerance = 1e-10);

/// Least-squares fit of log(value) = c - exponent * log|G/G_n| + log_power * log log|G/G_n|.
struct DecayFit {
  double exponent = 0;
  double log_power = 0;
  double intercept = 0;
  double residual = 0;  // RMS of log residuals
  int first = 0;
  int last = -1;
  int points = 0;
  bool valid = false;
  std::string note;
};

/// One-parameter power fit on levels first.. (until the first zero value or
/// level N-1). Needs at least 3 points.
DecayFit fit_power_decay(const Tower& t, std::span<const double> values, int first = 0);
/// Power times log-power fit on levels first.. (first >= 1). Needs at least 4 points.
DecayFit fit_power_log_decay(const Tower& t, std::span<const double> values, int first);
/// Plain slope of log y against log x.
DecayFit fit_loglog(std::span<const double> x, std::span<const double> y);

DecayFit lipschitz_fit(const Dual& dual, const FunctionSample& f, double p = 2.0);

struct Titchmarsh2Report {
  double alpha = 0;
  ModulusTable table;
  DecayFit modulus_fit;  // omega ~ |G/G_n|^{-alpha}
  DecayFit tail_fit;     // tail ~ |G/G_n|^{-2 alpha}
  double gap = 0;        // |alpha_modulus - alpha_tail / 2|
  bool pass = false;
};

inline constexpr double kExponentTolerance = 0.15;

Titchmarsh2Report titchmarsh_second_check(const Dual& dual, const FunctionSample& f, double alpha);

struct BetaRow {
  double beta = 0;
  double slope = 0;           // growth of the level-shell terms of ||fhat||_beta^beta
  double weighted_slope = 0;  // same with the bracket^gamma weight
  double norm = 0;            // finite-depth ||fhat||_{L^beta}
  double weighted_norm = 0;
};

struct Titchmarsh1Options {
  double p = 2;
  double alpha = 0.5;
  double gamma = 0;  // 0 selects alpha + 0.5 / q
  std::vector<double> beta_grid;  // empty selects 0.05-step grid
};

struct Titchmarsh1Report {
  double p = 0, q = 0, alpha = 0, gamma = 0;
  std::vector<double> s_profile;  // S(k), k = 0..N
  DecayFit s_fit;
  double s_target = 0;  // alpha q
  bool s_pass = false;
  std::vector<BetaRow> grid;
  double beta_star = 0;           // q / (alpha q + 1)
  double beta_star_weighted = 0;  // q / ((alpha - gamma) q + 1)
  std::optional<double> boundary;
  std::optional<double> boundary_weighted;
  bool boundary_pass = false;
  bool boundary_weighted_pass = false;
  std::vector<double> partial_sums;  // levels 0..N
  DecayFit partial_fit;
  double partial_target = 0;  // (gamma - alpha) q
  std::optional<int> lie_dimension;
  double lie_beta_star = 0;           // q D / (alpha q + D)
  double lie_beta_star_weighted = 0;  // q D / ((alpha - gamma) q + D)
  bool pass = false;
};

/// S(k) decay, beta-grid convergence boundaries, and partial-sum growth.
Titchmarsh1Report titchmarsh_first_check(const Dual& dual, const FunctionSample& f, const Titchmarsh1Options& options);

/// S(k) = sum over brackets > |G/G_k| of d^{2 - q/2} ||c||_HS^q, k = 0..N.
std::vector<double> s_profile(const Dual& dual, const DualCoefficients& c, double q);
/// Per-level sums of bracket^{gamma beta} d^{2 - beta/2} ||c||_HS^beta, levels 0..N.
std::vector<double> shell_terms(const Dual& dual, const DualCoefficients& c, double beta, double gamma = 0);

struct DiniReport {
  double alpha = 0, nu = 0;
  ModulusTable table;
  std::vector<double> target;  // |G/G_n|^{-alpha} (log |G/G_n|)^nu, n >= 1
  int window_start = 1;
  DecayFit modulus_fit;
  DecayFit tail_fit;  // fitted on sqrt(tail)
  bool pass = false;
};

inline constexpr double kLogPowerTolerance = 0.5;

DiniReport dini_lipschitz_check(const Dual& dual, const FunctionSample& f, double alpha, double nu);
/// First level k >= 1 from which the target profile is nonincreasing.
int dini_window_start(const Tower& t, double alpha, double nu);

/// c(k) = min over irreps nontrivial on G_k of
/// lambda_min(sum_i (pi(h_i) - I)(pi(h_i) - I)^*) (bracket / |G/G_k|)^2.
double condition_a_constant(const Dual& dual, int k, const std::vector<Element>& witnesses);
/// ((l^k e_1, l^k e_1, 0), (0, 0, l^k)).
std::pair<Element, Element> heisenberg_witnesses(const Tower& t, int k);
/// Depth-k witnesses that separate every irrep nontrivial on G_k.
std::vector<Element> default_witnesses(const Tower& t, int k);

}  // namespace vilenkin
