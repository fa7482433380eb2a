#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "vilenkin/dual.hpp"
#include "vilenkin/tower.hpp"

namespace vilenkin {

/// Fourier coefficients, one d x d block per irrep in Dual order.
struct DualCoefficients {
  std::vector<Eigen::MatrixXcd> blocks;

  std::size_t size() const { return blocks.size(); }
  const Eigen::MatrixXcd& operator[](std::size_t i) const { return blocks[i]; }
  Eigen::MatrixXcd& operator[](std::size_t i) { return blocks[i]; }
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// fhat(xi) = (1/|G|) sum_x f(x) xi(x)^*.
/// Abelian towers: one FFT per coordinate axis. Heisenberg towers: an FFT over
/// the (y, z) axes, then O(l^{Nd} sum_xi d_xi) work on the monomial entries.
DualCoefficients forward(const Dual& dual, const FunctionSample& f);
/// Same transform through dense representation matrices, O(|G|^2).
DualCoefficients forward_reference(const Dual& dual, const FunctionSample& f);

/// f(x) = sum_xi d_xi Tr[xi(x) fhat(xi)].
FunctionSample inverse(const Dual& dual, const DualCoefficients& c);
FunctionSample inverse_reference(const Dual& dual, const DualCoefficients& c);

/// Coefficients with zero blocks of the right shapes.
DualCoefficients zero_coefficients(const Dual& dual);

/// Haar L^p norm; p = kInfinity gives the sup norm.
double lp_norm(const FunctionSample& f, double p);

/// (sum_xi d^{2 - q/2} ||c(xi)||_HS^q)^{1/q}; q = kInfinity gives sup d^{-1/2} ||c||_HS.
double dual_lq_norm(const Dual& dual, const DualCoefficients& c, double q);

/// sum_xi d_xi ||c(xi)||_HS^2.
double plancherel_sum(const Dual& dual, const DualCoefficients& c);

/// g(x) = f(hx).
FunctionSample translate(const Tower& t, const FunctionSample& f, const Element& h);

/// ||f||_p - ||fhat||_q with q = p/(p-1).
double hausdorff_young_gap(const Dual& dual, const FunctionSample& f, double p);

/// Relative Plancherel residual |‖f‖_2^2 - sum d ||fhat||^2| / ‖f‖_2^2.
double plancherel_residual(const Dual& dual, const FunctionSample& f, const DualCoefficients& c);

/// [{label, dim, level, bracket, matrix: [[re, im], ...] row-major}, ...]
nlohmann::json coefficients_to_json(const Dual& dual, const DualCoefficients& c);
DualCoefficients coefficients_from_json(const Dual& dual, const nlohmann::json& j);

}  // namespace vilenkin
