#include "vilenkin/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace vilenkin {

namespace {

double diff_norm(const FunctionSample& f, const std::vector<Index>& perm, double p) {
  const Index size = f.size();
  if (std::isinf(p)) {
    double best = 0;
    for (Index i = 0; i < size; ++i) best = std::max(best, std::abs(f[perm[static_cast<std::size_t>(i)]] - f[i]));
    return best;
  }
  double acc = 0;
  for (Index i = 0; i < size; ++i) {
    const double v = std::abs(f[perm[static_cast<std::size_t>(i)]] - f[i]);
    acc += p == 2 ? v * v : std::pow(v, p);
  }
  acc /= static_cast<double>(size);
  return p == 2 ? std::sqrt(acc) : std::pow(acc, 1.0 / p);
}

double log_index(const Tower& t, int n) { return std::log(static_cast<double>(t.quotient_order(n))); }

// Ordinary least squares on the design matrix; fills intercept/coefficients and RMS.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, double& rms) {
  const Eigen::VectorXd beta = a.colPivHouseholderQr().solve(y);
  rms = std::sqrt((a * beta - y).squaredNorm() / static_cast<double>(y.size()));
  return beta;
}

// Levels first..last with usable (positive, non-negligible) values.
int window_end(const Tower& t, std::span<const double> values, int first) {
  const int cap = std::min<int>(t.depth() - 1, static_cast<int>(values.size()) - 1);
  double scale = 0;
  for (int n = first; n <= cap; ++n) scale = std::max(scale, std::abs(values[static_cast<std::size_t>(n)]));
  int last = first - 1;
  for (int n = first; n <= cap; ++n) {
    const double v = values[static_cast<std::size_t>(n)];
    if (!(v > 1e-12 * scale) || !std::isfinite(v)) break;
    last = n;
  }
  return last;
}

}  // namespace

double modulus(const Tower& t, const FunctionSample& f, int n, double p) {
  if (n < 0 || n >= t.depth()) throw std::out_of_range("modulus: level must lie in [0, N)");
  if (f.size() != t.size()) throw std::invalid_argument("function sample does not match the tower size");
  double best = 0;
  for (const Element& h : t.enumerate_subgroup(n)) best = std::max(best, diff_norm(f, t.left_translation_table(h), p));
  return best;
}

std::vector<double> modulus_profile(const Tower& t, const FunctionSample& f, double p) {
  if (f.size() != t.size()) throw std::invalid_argument("function sample does not match the tower size");
  const std::vector<int> depth = t.depth_table();
  std::vector<double> by_depth(static_cast<std::size_t>(t.depth()) + 1, 0.0);
  for (Index h = 0; h < t.size(); ++h) {
    const int d = depth[static_cast<std::size_t>(h)];
    if (d == t.depth()) continue;
    auto& slot = by_depth[static_cast<std::size_t>(d)];
    slot = std::max(slot, diff_norm(f, t.left_translation_table(t.at(h)), p));
  }
  std::vector<double> out(static_cast<std::size_t>(t.depth()), 0.0);
  double running = 0;
  for (int n = t.depth() - 1; n >= 0; --n) {
    running = std::max(running, by_depth[static_cast<std::size_t>(n)]);
    out[static_cast<std::size_t>(n)] = running;
  }
  return out;
}

std::vector<double> modulus_profile_l2(const Dual& dual, const DualCoefficients& c) {
  const Tower& t = dual.tower();
  DualCoefficients gram = zero_coefficients(dual);
  for (std::size_t i = 0; i < c.size(); ++i) gram[i] = c[i].adjoint() * c[i];
  const FunctionSample r = inverse(dual, gram);
  const double energy = plancherel_sum(dual, c);
  const std::vector<int> depth = t.depth_table();
  std::vector<double> by_depth(static_cast<std::size_t>(t.depth()) + 1, 0.0);
  for (Index h = 0; h < t.size(); ++h) {
    double v = 2.0 * energy - 2.0 * r[h].real();
    if (v < 1e-12 * energy) v = 0;
    auto& slot = by_depth[static_cast<std::size_t>(depth[static_cast<std::size_t>(h)])];
    slot = std::max(slot, v);
  }
  std::vector<double> out(static_cast<std::size_t>(t.depth()), 0.0);
  double running = 0;
  for (int n = t.depth() - 1; n >= 0; --n) {
    running = std::max(running, by_depth[static_cast<std::size_t>(n)]);
    out[static_cast<std::size_t>(n)] = std::sqrt(running);
  }
  return out;
}

double tail_sum(const Dual& dual, const DualCoefficients& c, int k) {
  if (k < 0 || k > dual.tower().depth()) throw std::out_of_range("tail_sum: level out of range");
  double acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (dual[i].level > k) acc += dual[i].dim * c[i].squaredNorm();
  }
  return acc;
}

std::vector<double> tail_profile(const Dual& dual, const DualCoefficients& c) {
  const int n_max = dual.tower().depth();
  std::vector<double> shell(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) shell[static_cast<std::size_t>(dual[i].level)] += dual[i].dim * c[i].squaredNorm();
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  double acc = 0;
  for (int k = n_max; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = acc;
    acc += shell[static_cast<std::size_t>(k)];
  }
  return out;
}

ModulusTable modulus_table(const Dual& dual, const FunctionSample& f, double p) {
  const Tower& t = dual.tower();
  const DualCoefficients c = forward(dual, f);
  ModulusTable m;
  m.omega = p == 2 ? modulus_profile_l2(dual, c) : modulus_profile(t, f, p);
  const std::vector<double> tails = tail_profile(dual, c);
  for (int n = 0; n < t.depth(); ++n) {
    m.level.push_back(n);
    m.index.push_back(t.quotient_order(n));
    const double tail = tails[static_cast<std::size_t>(n)];
    m.tail.push_back(tail);
    m.sqrt_tail.push_back(std::sqrt(tail));
    const double w = m.omega[static_cast<std::size_t>(n)];
    m.ratio.push_back(w > 0 ? std::sqrt(tail) / w : 0.0);
  }
  return m;
}

PlatonovReport platonov_check(const Dual& dual, const FunctionSample& f, double tolerance) {
  PlatonovReport r;
  r.table = modulus_table(dual, f, 2.0);
  const double scale = std::max(1.0, r.table.omega.empty() ? 0.0 : r.table.omega.front());
  for (std::size_t n = 0; n < r.table.omega.size(); ++n) {
    const double w = r.table.omega[n];
    const double s = r.table.sqrt_tail[n];
    const double slack = tolerance * scale;
    if (w / 2 > s + slack || s > w / std::sqrt(2.0) + slack) r.violations.push_back(static_cast<int>(n));
  }
  r.pass = r.violations.empty();
  return r;
}

DecayFit fit_power_decay(const Tower& t, std::span<const double> values, int first) {
  DecayFit fit;
  fit.first = first;
  fit.last = window_end(t, values, first);
  fit.points = fit.last - first + 1;
  if (fit.points < 3) {
    fit.note = "degenerate window: fewer than 3 levels with nonzero data";
    return fit;
  }
  Eigen::MatrixXd a(fit.points, 2);
  Eigen::VectorXd y(fit.points);
  for (int i = 0; i < fit.points; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = -log_index(t, first + i);
    y(i) = std::log(values[static_cast<std::size_t>(first + i)]);
  }
  const Eigen::VectorXd b = least_squares(a, y, fit.residual);
  fit.intercept = b(0);
  fit.exponent = b(1);
  fit.valid = true;
  return fit;
}

DecayFit fit_power_log_decay(const Tower& t, std::span<const double> values, int first) {
  DecayFit fit;
  first = std::max(first, 1);
  fit.first = first;
  fit.last = window_end(t, values, first);
  fit.points = fit.last - first + 1;
  if (fit.points < 4) {
    fit.note = "degenerate window: fewer than 4 levels for the two-parameter fit";
    return fit;
  }
  Eigen::MatrixXd a(fit.points, 3);
  Eigen::VectorXd y(fit.points);
  for (int i = 0; i < fit.points; ++i) {
    const double lx = log_index(t, first + i);
    a(i, 0) = 1.0;
    a(i, 1) = -lx;
    a(i, 2) = std::log(lx);
    y(i) = std::log(values[static_cast<std::size_t>(first + i)]);
  }
  const Eigen::VectorXd b = least_squares(a, y, fit.residual);
  fit.intercept = b(0);
  fit.exponent = b(1);
  fit.log_power = b(2);
  fit.valid = true;
  return fit;
}

DecayFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  DecayFit fit;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0 && y[i] > 0 && std::isfinite(y[i])) pts.emplace_back(std::log(x[i]), std::log(y[i]));
  }
  fit.points = static_cast<int>(pts.size());
  if (fit.points < 2) {
    fit.note = "fewer than 2 positive points";
    return fit;
  }
  Eigen::MatrixXd a(fit.points, 2);
  Eigen::VectorXd v(fit.points);
  for (int i = 0; i < fit.points; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = pts[static_cast<std::size_t>(i)].first;
    v(i) = pts[static_cast<std::size_t>(i)].second;
  }
  const Eigen::VectorXd b = least_squares(a, v, fit.residual);
  fit.intercept = b(0);
  fit.exponent = b(1);
  fit.valid = true;
  return fit;
}

DecayFit lipschitz_fit(const Dual& dual, const FunctionSample& f, double p) {
  const Tower& t = dual.tower();
  const std::vector<double> omega = p == 2 ? modulus_profile_l2(dual, forward(dual, f)) : modulus_profile(t, f, p);
  return fit_power_decay(t, omega, 0);
}

Titchmarsh2Report titchmarsh_second_check(const Dual& dual, const FunctionSample& f, double alpha) {
  Titchmarsh2Report r;
  r.alpha = alpha;
  r.table = modulus_table(dual, f, 2.0);
  const Tower& t = dual.tower();
  r.modulus_fit = fit_power_decay(t, r.table.omega, 0);
  r.tail_fit = fit_power_decay(t, r.table.tail, 0);
  if (r.modulus_fit.valid && r.tail_fit.valid) {
    r.gap = std::abs(r.modulus_fit.exponent - r.tail_fit.exponent / 2);
    r.pass = r.gap <= kExponentTolerance;
  }
  return r;
}

std::vector<double> s_profile(const Dual& dual, const DualCoefficients& c, double q) {
  const std::vector<double> shells = shell_terms(dual, c, q, 0.0);
  std::vector<double> out(shells.size(), 0.0);
  double acc = 0;
  for (std::size_t k = shells.size(); k-- > 0;) {
    out[k] = acc;
    acc += shells[k];
  }
  return out;
}

std::vector<double> shell_terms(const Dual& dual, const DualCoefficients& c, double beta, double gamma) {
  std::vector<double> out(static_cast<std::size_t>(dual.tower().depth()) + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double hs = c[i].norm();
    if (hs == 0) continue;
    const Irrep& r = dual[i];
    double term = std::pow(static_cast<double>(r.dim), 2.0 - beta / 2.0) * std::pow(hs, beta);
    if (gamma != 0) term *= std::pow(static_cast<double>(r.bracket), gamma * beta);
    out[static_cast<std::size_t>(r.level)] += term;
  }
  return out;
}

Titchmarsh1Report titchmarsh_first_check(const Dual& dual, const FunctionSample& f, const Titchmarsh1Options& options) {
  const Tower& t = dual.tower();
  Titchmarsh1Report r;
  r.p = options.p;
  if (!(r.p > 1 && r.p <= 2)) throw std::invalid_argument("titchmarsh_first_check: p must lie in (1, 2]");
  r.q = r.p / (r.p - 1);
  r.alpha = options.alpha;
  r.gamma = options.gamma != 0 ? options.gamma : r.alpha + 0.5 / r.q;
  if (!(r.gamma > r.alpha && r.gamma < r.alpha + 1 / r.q))
    throw std::invalid_argument("titchmarsh_first_check: gamma must lie in (alpha, alpha + 1/q)");
  const DualCoefficients c = forward(dual, f);

  r.s_profile = s_profile(dual, c, r.q);
  r.s_fit = fit_power_decay(t, r.s_profile, 0);
  r.s_target = r.alpha * r.q;
  r.s_pass = r.s_fit.valid && std::abs(r.s_fit.exponent - r.s_target) <= kExponentTolerance;

  r.beta_star = r.q / (r.alpha * r.q + 1);
  r.beta_star_weighted = r.q / ((r.alpha - r.gamma) * r.q + 1);
  constexpr double step = 0.05;
  std::vector<double> grid = options.beta_grid;
  if (grid.empty()) {
    const int top = static_cast<int>(std::ceil((1.25 * std::max(r.beta_star, r.beta_star_weighted) + 0.5) / step));
    for (int j = 1; j <= top; ++j) grid.push_back(step * j);
  }
  // Shells 1..N-1; shell N holds the whole sub-resolution remainder.
  std::vector<double> xs;
  for (int s = 1; s < t.depth(); ++s) xs.push_back(static_cast<double>(t.quotient_order(s)));
  for (double beta : grid) {
    BetaRow row;
    row.beta = beta;
    const std::vector<double> plain = shell_terms(dual, c, beta, 0.0);
    const std::vector<double> weighted = shell_terms(dual, c, beta, r.gamma);
    const std::span<const double> plain_shells(plain.data() + 1, xs.size());
    const std::span<const double> weighted_shells(weighted.data() + 1, xs.size());
    row.slope = fit_loglog(xs, plain_shells).exponent;
    row.weighted_slope = fit_loglog(xs, weighted_shells).exponent;
    double sp = 0, sw = 0;
    for (double v : plain) sp += v;
    for (double v : weighted) sw += v;
    row.norm = std::pow(sp, 1 / beta);
    row.weighted_norm = std::pow(sw, 1 / beta);
    if (!r.boundary && row.slope < 0) r.boundary = beta;
    if (!r.boundary_weighted && row.weighted_slope < 0) r.boundary_weighted = beta;
    r.grid.push_back(row);
  }
  const double grid_step = grid.size() > 1 ? grid[1] - grid[0] : step;
  r.boundary_pass = r.boundary && std::abs(*r.boundary - r.beta_star) <= grid_step + 1e-9;
  r.boundary_weighted_pass = r.boundary_weighted && std::abs(*r.boundary_weighted - r.beta_star_weighted) <= grid_step + 1e-9;

  const std::vector<double> weighted_q = shell_terms(dual, c, r.q, r.gamma);
  r.partial_sums.assign(weighted_q.size(), 0.0);
  double acc = 0;
  for (std::size_t n = 0; n < weighted_q.size(); ++n) r.partial_sums[n] = acc += weighted_q[n];
  r.partial_fit = fit_loglog(xs, std::span<const double>(r.partial_sums.data() + 1, xs.size()));
  r.partial_target = (r.gamma - r.alpha) * r.q;

  if (t.family() != Family::VilenkinProduct) {
    const int D = t.lie_dimension();
    r.lie_dimension = D;
    r.lie_beta_star = r.q * D / (r.alpha * r.q + D);
    r.lie_beta_star_weighted = r.q * D / ((r.alpha - r.gamma) * r.q + D);
  }
  r.pass = r.s_pass && r.boundary_pass;
  return r;
}

int dini_window_start(const Tower& t, double alpha, double nu) {
  std::vector<double> target(static_cast<std::size_t>(t.depth()), 0.0);
  for (int n = 1; n < t.depth(); ++n) {
    const double lx = log_index(t, n);
    target[static_cast<std::size_t>(n)] = std::exp(-alpha * lx) * std::pow(lx, nu);
  }
  int start = t.depth() - 1;
  while (start > 1 && target[static_cast<std::size_t>(start - 1)] >= target[static_cast<std::size_t>(start)]) --start;
  return std::max(start, 1);
}

DiniReport dini_lipschitz_check(const Dual& dual, const FunctionSample& f, double alpha, double nu) {
  const Tower& t = dual.tower();
  DiniReport r;
  r.alpha = alpha;
  r.nu = nu;
  r.table = modulus_table(dual, f, 2.0);
  r.target.assign(static_cast<std::size_t>(t.depth()), 0.0);
  for (int n = 1; n < t.depth(); ++n) {
    const double lx = log_index(t, n);
    r.target[static_cast<std::size_t>(n)] = std::exp(-alpha * lx) * std::pow(lx, nu);
  }
  r.window_start = dini_window_start(t, alpha, nu);
  r.modulus_fit = fit_power_log_decay(t, r.table.omega, r.window_start);
  r.tail_fit = fit_power_log_decay(t, r.table.sqrt_tail, r.window_start);
  auto ok = [&](const DecayFit& fit) {
    return fit.valid && std::abs(fit.exponent - alpha) <= kExponentTolerance && std::abs(fit.log_power - nu) <= kLogPowerTolerance;
  };
  r.pass = ok(r.modulus_fit) && ok(r.tail_fit);
  return r;
}

double condition_a_constant(const Dual& dual, int k, const std::vector<Element>& witnesses) {
  const Tower& t = dual.tower();
  if (k < 0 || k >= t.depth()) throw std::out_of_range("condition_a_constant: level must lie in [0, N)");
  for (const Element& h : witnesses) {
    t.validate(h);
    if (t.depth_of(h) != k) throw std::invalid_argument("condition_a_constant: witness does not have depth k");
  }
  const double scale = static_cast<double>(t.quotient_order(k));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const Irrep& r = dual[i];
    if (r.level <= k) continue;
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(r.dim, r.dim);
    for (const Element& h : witnesses) {
      const Eigen::MatrixXcd u = dual.matrix(i, h) - Eigen::MatrixXcd::Identity(r.dim, r.dim);
      gram += u * u.adjoint();
    }
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(gram, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    const double ratio = static_cast<double>(r.bracket) / scale;
    best = std::min(best, std::max(lmin, 0.0) * ratio * ratio);
  }
  return best;
}

std::pair<Element, Element> heisenberg_witnesses(const Tower& t, int k) {
  if (t.family() != Family::Heisenberg) throw std::invalid_argument("heisenberg_witnesses: Heisenberg tower required");
  if (k < 0 || k >= t.depth()) throw std::out_of_range("heisenberg_witnesses: level must lie in [0, N)");
  const int d = t.dim();
  const std::int64_t s = ipow(t.prime(), k);
  std::vector<std::int64_t> h1(static_cast<std::size_t>(2 * d + 1), 0), h2(h1);
  h1[0] = s;
  h1[static_cast<std::size_t>(d)] = s;
  h2[static_cast<std::size_t>(2 * d)] = s;
  return {t.element(h1), t.element(h2)};
}

std::vector<Element> default_witnesses(const Tower& t, int k) {
  if (k < 0 || k >= t.depth()) throw std::out_of_range("default_witnesses: level must lie in [0, N)");
  std::vector<Element> out;
  const std::size_t n = t.coordinate_count();
  if (t.family() == Family::VilenkinProduct) {
    std::vector<std::int64_t> base(n, 0);
    base[static_cast<std::size_t>(k)] = 1;
    out.push_back(t.element(base));
    for (std::size_t j = static_cast<std::size_t>(k) + 1; j < n; ++j) {
      std::vector<std::int64_t> h = base;
      h[j] = 1;
      out.push_back(t.element(h));
    }
    return out;
  }
  const std::int64_t s = ipow(t.prime(), k);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::int64_t> h(n, 0);
    h[j] = s;
    out.push_back(t.element(h));
  }
  return out;
}

}  // namespace vilenkin
