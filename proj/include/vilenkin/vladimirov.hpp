#pragma once

#include <string>
#include <vector>

#include "vilenkin/dual.hpp"
#include "vilenkin/tower.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

/// Gamma(a, n) for n = 1..N (partial[0] is unused and set to 0) and Gamma(a).
struct GammaTable {
  double a = 0;
  std::vector<double> partial;
  double sup = 0;
  bool closed_form = false;  // sup taken from the constant-order limit
};

struct GammaExact {
  std::vector<Rational> partial;
  Rational sup;
  bool closed_form = false;
};

/// Gamma(a, n) = kappa_{n-1}^{-(a+1)} + sum_{k<n} |G_k/G_n|^{-a} (1 - 1/kappa_k).
/// Constant-order towers use the limit -(1 - kappa^{-(a+1)}) / (1 - kappa^a)
/// as Gamma(a); otherwise the sup over the available n.
GammaTable gamma(const Tower& t, double a);
/// Exact version for integer a >= 1.
GammaExact gamma_exact(const Tower& t, int a);

enum class VtMode { Group, Lie };

std::string to_string(VtMode mode);
VtMode vt_mode_from_string(const std::string& name);

/// Eigenvalue of the operator on irreps of each level 0..N.
struct VtSymbol {
  double a = 0;  // group-mode exponent
  VtMode mode = VtMode::Group;
  std::vector<double> eigenvalue;   // by level
  std::vector<double> lie_bracket;  // Lie mode only: the bracket of the D operator, by level

  double operator()(int level) const { return eigenvalue[static_cast<std::size_t>(level)]; }
};

/// Group mode: lambda(n) = Gamma(a, n) / Gamma(a) * |G/G_n|^a, lambda(0) = 0.
/// Lie mode (p-adic families, exponent alpha on the l-adic norm): group mode
/// with a = alpha / D on the constant-order tower kappa = l^D.
VtSymbol vt_symbol(const Tower& t, double a, VtMode mode = VtMode::Group);

/// Exact group-mode eigenvalues for integer a.
std::vector<Rational> vt_eigenvalues_exact(const Tower& t, int a);
/// kappa^{a n} - (1 - 1/kappa) / (1 - kappa^{-(a+1)}) for n >= 1.
Rational constant_order_eigenvalue(std::int64_t kappa, int a, int n);

/// Finite Haar sum of the singular integral over y outside G_N.
FunctionSample vt_apply_direct(const Tower& t, const FunctionSample& f, double a, VtMode mode = VtMode::Group);
/// inverse(lambda(level) * forward(f)).
FunctionSample vt_apply_spectral(const Dual& dual, const FunctionSample& f, double a, VtMode mode = VtMode::Group);
DualCoefficients apply_symbol(const Dual& dual, const DualCoefficients& c, const VtSymbol& s);

/// (||f||_2^2 + ||D^k f||_2^2)^{1/2}, computed spectrally.
double sobolev_norm(const Dual& dual, const FunctionSample& f, double k);

}  // namespace vilenkin
