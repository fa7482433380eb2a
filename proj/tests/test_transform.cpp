#include <doctest.h>

#include <random>

#include "vilenkin/transform.hpp"

using namespace vilenkin;

namespace {

FunctionSample gaussian(const Tower& t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  FunctionSample f(t.size());
  for (Index i = 0; i < t.size(); ++i) f[i] = {n(rng), n(rng)};
  return f;
}

double max_block_diff(const DualCoefficients& a, const DualCoefficients& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return worst;
}

std::vector<Tower> sample_towers() {
  return {Tower::padic(3, 1, 4),      Tower::padic(5, 1, 3),      Tower::padic(3, 2, 2),
          Tower::vilenkin_product({2, 3, 4, 5}), Tower::vilenkin_product({4, 2, 3}), Tower::heisenberg(3, 1, 1),
          Tower::heisenberg(3, 1, 2), Tower::heisenberg(5, 1, 1), Tower::heisenberg(3, 2, 1)};
}

}  // namespace

TEST_CASE("fast transforms agree with the dense reference") {
  for (const Tower& t : sample_towers()) {
    const Dual dual(t);
    const FunctionSample f = gaussian(t, 8);
    const DualCoefficients fast = forward(dual, f);
    CHECK(max_block_diff(fast, forward_reference(dual, f)) < 1e-12);
    CHECK((inverse(dual, fast) - inverse_reference(dual, fast)).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("round trip and Plancherel") {
  for (const Tower& t : sample_towers()) {
    const Dual dual(t);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const FunctionSample f = gaussian(t, seed);
      const DualCoefficients c = forward(dual, f);
      CHECK((inverse(dual, c) - f).norm() / f.norm() < 1e-12);
      CHECK(plancherel_residual(dual, f, c) < 1e-12);
    }
  }
}

TEST_CASE("delta at the identity has identity coefficients") {
  for (const Tower& t : sample_towers()) {
    const Dual dual(t);
    FunctionSample f = FunctionSample::Zero(t.size());
    f[t.index(t.identity())] = static_cast<double>(t.size());
    const DualCoefficients c = forward(dual, f);
    for (std::size_t i = 0; i < dual.size(); ++i)
      CHECK((c[i] - Eigen::MatrixXcd::Identity(dual[i].dim, dual[i].dim)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("left translation multiplies coefficients by pi(h)") {
  for (const Tower& t : sample_towers()) {
    const Dual dual(t);
    const FunctionSample f = gaussian(t, 9);
    const Element h = t.at(t.size() / 3 + 1);
    const DualCoefficients c = forward(dual, f);
    const DualCoefficients ch = forward(dual, translate(t, f, h));
    for (std::size_t i = 0; i < dual.size(); ++i) CHECK((ch[i] - c[i] * dual.matrix(i, h)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("indicator of G_1 on Z/27") {
  const Tower t = Tower::padic(3, 1, 3);
  const Dual dual(t);
  FunctionSample f = FunctionSample::Zero(t.size());
  for (const Element& x : t.enumerate_subgroup(1)) f[t.index(x)] = 1;
  const DualCoefficients c = forward(dual, f);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const std::int64_t xi = dual[i].label[0];
    CHECK(std::abs(c[i](0, 0) - (xi % 9 == 0 ? 1.0 / 3.0 : 0.0)) < 1e-15);
  }
  CHECK(std::abs(dual_lq_norm(dual, c, 2) - 1 / std::sqrt(3.0)) < 1e-14);
  CHECK(std::abs(lp_norm(f, 2) - 1 / std::sqrt(3.0)) < 1e-14);
}

TEST_CASE("Hausdorff-Young gap is nonnegative and vanishes at p = 2") {
  for (const Tower& t : sample_towers()) {
    const Dual dual(t);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const FunctionSample f = gaussian(t, seed);
      for (double p : {1.01, 1.2, 1.5, 1.9}) CHECK(hausdorff_young_gap(dual, f, p) >= -1e-12);
      CHECK(std::abs(hausdorff_young_gap(dual, f, 2.0)) < 1e-12);
    }
  }
  const Dual d(Tower::padic(3, 1, 2));
  CHECK_THROWS_AS(hausdorff_young_gap(d, FunctionSample::Ones(9), 2.5), std::invalid_argument);
  CHECK_THROWS_AS(hausdorff_young_gap(d, FunctionSample::Ones(9), 1.0), std::invalid_argument);
}

TEST_CASE("norms of simple functions") {
  const FunctionSample one = FunctionSample::Ones(27);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) CHECK(std::abs(lp_norm(one, p) - 1.0) < 1e-15);
  FunctionSample spike = FunctionSample::Zero(4);
  spike[2] = 2.0;
  CHECK(std::abs(lp_norm(spike, 1) - 0.5) < 1e-15);
  CHECK(lp_norm(spike, kInfinity) == 2.0);
  const Dual dual(Tower::heisenberg(3, 1, 1));
  DualCoefficients c = zero_coefficients(dual);
  c[dual.size() - 1](0, 0) = 3.0;
  CHECK(std::abs(dual_lq_norm(dual, c, kInfinity) - 3.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(dual_lq_norm(dual, c, 4) - std::pow(std::pow(3.0, 2.0 - 2.0) * 81.0, 0.25)) < 1e-12);
  CHECK(std::abs(plancherel_sum(dual, c) - 27.0) < 1e-12);
  CHECK_THROWS_AS(lp_norm(one, 0.5), std::invalid_argument);
}

TEST_CASE("coefficients survive a JSON round trip") {
  for (const Tower& t : {Tower::heisenberg(3, 1, 1), Tower::vilenkin_product({2, 3})}) {
    const Dual dual(t);
    const DualCoefficients c = forward(dual, gaussian(t, 10));
    const nlohmann::json j = coefficients_to_json(dual, c);
    CHECK(j.size() == dual.size());
    CHECK(j[0].contains("label"));
    CHECK(j[0].contains("bracket"));
    CHECK(max_block_diff(coefficients_from_json(dual, nlohmann::json::parse(j.dump())), c) == 0);
  }
  const Dual dual(Tower::heisenberg(3, 1, 1));
  nlohmann::json bad = coefficients_to_json(dual, zero_coefficients(dual));
  bad.erase(bad.size() - 1);
  CHECK_THROWS(coefficients_from_json(dual, bad));
}

TEST_CASE("mismatched shapes are rejected") {
  const Dual dual(Tower::padic(3, 1, 2));
  CHECK_THROWS_AS(forward(dual, FunctionSample::Ones(8)), std::invalid_argument);
  DualCoefficients c = zero_coefficients(dual);
  c.blocks.pop_back();
  CHECK_THROWS_AS(inverse(dual, c), std::invalid_argument);
}
