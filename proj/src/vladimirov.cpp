#include "vilenkin/vladimirov.hpp"

#include <cmath>
#include <stdexcept>

namespace vilenkin {

namespace {

Rational rpow(const Rational& base, int e) {
  Rational out = 1;
  const Rational b = e < 0 ? Rational(1) / base : base;
  for (int i = 0; i < std::abs(e); ++i) out *= b;
  return out;
}

void require_positive(double a) {
  if (!(a > 0)) throw std::invalid_argument("exponent must be positive");
}

}  // namespace

GammaTable gamma(const Tower& t, double a) {
  require_positive(a);
  const int n_max = t.depth();
  GammaTable g;
  g.a = a;
  g.partial.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    double v = std::pow(static_cast<double>(t.kappa(n - 1)), -(a + 1));
    for (int k = 0; k < n; ++k) {
      const double ratio = static_cast<double>(t.quotient_order(n)) / static_cast<double>(t.quotient_order(k));
      v += std::pow(ratio, -a) * (1.0 - 1.0 / static_cast<double>(t.kappa(k)));
    }
    g.partial[static_cast<std::size_t>(n)] = v;
    g.sup = std::max(g.sup, v);
  }
  if (t.constant_order()) {
    const double kappa = static_cast<double>(t.kappa(0));
    g.sup = -(1.0 - std::pow(kappa, -(a + 1))) / (1.0 - std::pow(kappa, a));
    g.closed_form = true;
  }
  return g;
}

GammaExact gamma_exact(const Tower& t, int a) {
  if (a < 1) throw std::invalid_argument("gamma_exact: integer exponent must be >= 1");
  const int n_max = t.depth();
  GammaExact g;
  g.partial.assign(static_cast<std::size_t>(n_max) + 1, Rational(0));
  for (int n = 1; n <= n_max; ++n) {
    Rational v = rpow(Rational(t.kappa(n - 1)), -(a + 1));
    for (int k = 0; k < n; ++k) {
      const Rational ratio(t.quotient_order(n) / t.quotient_order(k));
      v += rpow(ratio, -a) * (Rational(1) - Rational(1, t.kappa(k)));
    }
    g.partial[static_cast<std::size_t>(n)] = v;
    if (v > g.sup) g.sup = v;
  }
  if (t.constant_order()) {
    const Rational kappa(t.kappa(0));
    g.sup = -(Rational(1) - rpow(kappa, -(a + 1))) / (Rational(1) - rpow(kappa, a));
    g.closed_form = true;
  }
  return g;
}

std::string to_string(VtMode mode) { return mode == VtMode::Group ? "group" : "lie"; }

VtMode vt_mode_from_string(const std::string& name) {
  if (name == "group") return VtMode::Group;
  if (name == "lie") return VtMode::Lie;
  throw std::invalid_argument("unknown operator mode: " + name);
}

VtSymbol vt_symbol(const Tower& t, double a, VtMode mode) {
  require_positive(a);
  VtSymbol s;
  s.mode = mode;
  const int n_max = t.depth();
  s.eigenvalue.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (mode == VtMode::Group) {
    s.a = a;
    const GammaTable g = gamma(t, a);
    for (int n = 1; n <= n_max; ++n)
      s.eigenvalue[static_cast<std::size_t>(n)] =
          g.partial[static_cast<std::size_t>(n)] / g.sup * std::pow(static_cast<double>(t.quotient_order(n)), a);
    return s;
  }
  if (t.family() == Family::VilenkinProduct) throw std::invalid_argument("lie mode needs a p-adic family");
  const int D = t.lie_dimension();
  const double ell = t.prime();
  s.a = a / D;
  const double shift = (1.0 - std::pow(ell, -D)) / (1.0 - std::pow(ell, -(a + D)));
  for (int n = 1; n <= n_max; ++n) s.eigenvalue[static_cast<std::size_t>(n)] = std::pow(ell, a * n) - shift;
  s.lie_bracket.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  s.lie_bracket[0] = (1.0 - std::pow(ell, -D)) / (1.0 - std::pow(ell, -(1 + D)));
  for (int n = 1; n <= n_max; ++n) s.lie_bracket[static_cast<std::size_t>(n)] = std::pow(ell, n);
  return s;
}

std::vector<Rational> vt_eigenvalues_exact(const Tower& t, int a) {
  const GammaExact g = gamma_exact(t, a);
  std::vector<Rational> out(static_cast<std::size_t>(t.depth()) + 1, Rational(0));
  for (int n = 1; n <= t.depth(); ++n)
    out[static_cast<std::size_t>(n)] = g.partial[static_cast<std::size_t>(n)] / g.sup * rpow(Rational(t.quotient_order(n)), a);
  return out;
}

Rational constant_order_eigenvalue(std::int64_t kappa, int a, int n) {
  const Rational k(kappa);
  return rpow(k, a * n) - (Rational(1) - Rational(1) / k) / (Rational(1) - rpow(k, -(a + 1)));
}

FunctionSample vt_apply_direct(const Tower& t, const FunctionSample& f, double a, VtMode mode) {
  require_positive(a);
  if (f.size() != t.size()) throw std::invalid_argument("function sample does not match the tower size");
  const Index size = t.size();
  double prefactor = 0;
  std::vector<double> weight(static_cast<std::size_t>(size), 0.0);  // per y: |y|^{-(a+1)} / |G|
  if (mode == VtMode::Group) {
    prefactor = -1.0 / gamma(t, a).sup;
    for (Index y = 0; y < size; ++y) {
      const DepthNorm dn = t.depth_and_norm(t.at(y));
      if (dn.at_resolution) continue;
      weight[static_cast<std::size_t>(y)] = std::pow(to_double(dn.norm), -(a + 1)) / static_cast<double>(size);
    }
  } else {
    if (t.family() == Family::VilenkinProduct) throw std::invalid_argument("lie mode needs a p-adic family");
    const int D = t.lie_dimension();
    const double ell = t.prime();
    prefactor = (1.0 - std::pow(ell, a)) / (1.0 - std::pow(ell, -(a + D)));
    for (Index y = 0; y < size; ++y) {
      const DepthNorm dn = t.depth_and_norm(t.at(y));
      if (dn.at_resolution) continue;
      weight[static_cast<std::size_t>(y)] = std::pow(to_double(*dn.lie_norm), -(a + D)) / static_cast<double>(size);
    }
  }
  std::vector<Element> points;
  points.reserve(static_cast<std::size_t>(size));
  for (Index x = 0; x < size; ++x) points.push_back(t.at(x));
  FunctionSample out = FunctionSample::Zero(size);
  for (Index y = 0; y < size; ++y) {
    const double w = weight[static_cast<std::size_t>(y)];
    if (w == 0) continue;
    const Element yinv = t.inverse(points[static_cast<std::size_t>(y)]);
    for (Index x = 0; x < size; ++x) {
      const Index xy = t.index(t.multiply(points[static_cast<std::size_t>(x)], yinv));
      out[x] += w * (f[xy] - f[x]);
    }
  }
  return prefactor * out;
}

DualCoefficients apply_symbol(const Dual& dual, const DualCoefficients& c, const VtSymbol& s) {
  DualCoefficients out = c;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= s(dual[i].level);
  return out;
}

FunctionSample vt_apply_spectral(const Dual& dual, const FunctionSample& f, double a, VtMode mode) {
  const VtSymbol s = vt_symbol(dual.tower(), a, mode);
  return inverse(dual, apply_symbol(dual, forward(dual, f), s));
}

double sobolev_norm(const Dual& dual, const FunctionSample& f, double k) {
  require_positive(k);
  const VtSymbol s = vt_symbol(dual.tower(), k);
  const DualCoefficients c = forward(dual, f);
  double acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double lam = s(dual[i].level);
    acc += dual[i].dim * c[i].squaredNorm() * (1.0 + lam * lam);
  }
  return std::sqrt(acc);
}

}  // namespace vilenkin
