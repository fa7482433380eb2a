#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "vilenkin/dual.hpp"
#include "vilenkin/tower.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

/// {family: indicator|radial|random_fourier|dini|dirichlet|values, params, seed}
struct FunctionSpec {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
};

FunctionSpec function_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FunctionSpec& spec);

/// Throws std::invalid_argument when the function spec does not fit the tower.
void validate_function_spec(const Tower& t, const FunctionSpec& spec);

FunctionSample generate_function(const Dual& dual, const FunctionSpec& spec);

/// 1 on G_m, 0 elsewhere; 0 <= m < N.
FunctionSample indicator(const Tower& t, int m);
/// |x|_G^b with the identity coset mapped to 0; b > 0.
FunctionSample radial(const Tower& t, double b);

/// Isotropic Gaussian blocks (entry variance 1/d), each level shell rescaled
/// so that tail(k) = |G/G_k|^{-2 alpha} for k < N; trivial coefficient 0.
DualCoefficients random_fourier_coefficients(const Dual& dual, double alpha, std::uint64_t seed);
FunctionSample random_fourier(const Dual& dual, double alpha, std::uint64_t seed);

/// Same construction with tail(k) following the nonincreasing envelope of
/// |G/G_k|^{-2 alpha} (log |G/G_k|)^{2 nu}, k >= 1; tail(0) = tail(1).
DualCoefficients dini_coefficients(const Dual& dual, double alpha, double nu, std::uint64_t seed);
FunctionSample dini_function(const Dual& dual, double alpha, double nu, std::uint64_t seed);
/// Target tails used by dini_coefficients, k = 0..N.
std::vector<double> dini_tail_targets(const Tower& t, double alpha, double nu);

/// sum_{m=0}^{N} |G_m|^{alpha - 1/p} e^{i theta_m} 1_{g_m G_m} with random
/// phases theta_m and random cosets g_m G_m.
FunctionSample dirichlet_function(const Tower& t, double alpha, double p, std::uint64_t seed);

}  // namespace vilenkin
