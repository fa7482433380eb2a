#include <doctest.h>

#include <random>

#include "vilenkin/families.hpp"
#include "vilenkin/vladimirov.hpp"

using namespace vilenkin;

namespace {

FunctionSample gaussian(const Tower& t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  FunctionSample f(t.size());
  for (Index i = 0; i < t.size(); ++i) f[i] = {n(rng), n(rng)};
  return f;
}

std::complex<double> inner(const FunctionSample& f, const FunctionSample& g) {
  return f.dot(g) / static_cast<double>(f.size());
}

}  // namespace

TEST_CASE("gamma partial sums") {
  const GammaExact g = gamma_exact(Tower::padic(3, 1, 3), 1);
  CHECK(g.partial[1] == Rational(1, 3));
  CHECK(g.partial[2] == Rational(11, 27));
  CHECK(g.partial[3] == Rational(35, 81));
  CHECK(g.closed_form);
  CHECK(g.sup == Rational(4, 9));
  const GammaTable gd = gamma(Tower::padic(3, 1, 3), 1.0);
  CHECK(gd.sup == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  for (std::size_t n = 2; n < gd.partial.size(); ++n) CHECK(gd.partial[n] > gd.partial[n - 1]);

  // kappa = (2, 5): 2^{-2} + |G_0/G_1|^{-1} (1 - 1/2)
  const GammaExact v = gamma_exact(Tower::vilenkin_product({2, 5}), 1);
  CHECK(v.partial[1] == Rational(1, 2));
  CHECK(v.partial[2] == Rational(1, 25) + Rational(1, 10) * Rational(1, 2) + Rational(1, 5) * Rational(4, 5));
  CHECK_FALSE(v.closed_form);
  CHECK(v.sup == Rational(1, 2));
}

TEST_CASE("exact constant-order eigenvalues") {
  const std::vector<Rational> lam = vt_eigenvalues_exact(Tower::padic(3, 1, 3), 1);
  CHECK(lam[0] == 0);
  CHECK(lam[1] == Rational(9, 4));
  CHECK(lam[2] == Rational(33, 4));
  CHECK(lam[3] == Rational(105, 4));
  for (int n = 1; n <= 3; ++n) CHECK(lam[static_cast<std::size_t>(n)] == constant_order_eigenvalue(3, 1, n));
  CHECK(constant_order_eigenvalue(3, 1, 1) == Rational(3) - Rational(3, 4));
  const std::vector<Rational> sq = vt_eigenvalues_exact(Tower::padic(5, 1, 3), 2);
  for (int n = 1; n <= 3; ++n) CHECK(sq[static_cast<std::size_t>(n)] == constant_order_eigenvalue(5, 2, n));
  const VtSymbol s = vt_symbol(Tower::padic(3, 1, 3), 1.0);
  for (int n = 0; n <= 3; ++n) CHECK(s(n) == doctest::Approx(to_double(lam[static_cast<std::size_t>(n)])).epsilon(1e-14));
}

TEST_CASE("operator on the indicator of G_1 in Z/27") {
  const Tower t = Tower::padic(3, 1, 3);
  const Dual dual(t);
  const FunctionSample f = indicator(t, 1);
  const FunctionSample spectral = vt_apply_spectral(dual, f, 1.0);
  const FunctionSample direct = vt_apply_direct(t, f, 1.0);
  for (Index i = 0; i < t.size(); ++i) {
    const double expected = t.depth_of(t.at(i)) >= 1 ? 1.5 : -0.75;
    CHECK(std::abs(spectral[i] - expected) < 1e-12);
    CHECK(std::abs(direct[i] - expected) < 1e-12);
  }
  CHECK(sobolev_norm(dual, f, 1.0) == doctest::Approx(std::sqrt(1.0 / 3.0 + 9.0 / 8.0)).epsilon(1e-13));
}

TEST_CASE("direct and spectral paths agree") {
  for (const Tower& t : {Tower::padic(3, 1, 4), Tower::padic(5, 2, 2), Tower::vilenkin_product({2, 3, 4, 5}), Tower::heisenberg(3, 1, 2),
                         Tower::heisenberg(3, 2, 1)}) {
    const Dual dual(t);
    const FunctionSample f = gaussian(t, 12);
    for (double a : {0.3, 1.0, 2.5}) {
      const FunctionSample s = vt_apply_spectral(dual, f, a);
      CHECK((vt_apply_direct(t, f, a) - s).norm() / s.norm() < 1e-10);
    }
    if (t.family() != Family::VilenkinProduct) {
      const FunctionSample s = vt_apply_spectral(dual, f, 1.5, VtMode::Lie);
      CHECK((vt_apply_direct(t, f, 1.5, VtMode::Lie) - s).norm() / s.norm() < 1e-10);
    }
  }
}

TEST_CASE("Lie mode is group mode with exponent alpha / D") {
  for (const Tower& t : {Tower::padic(3, 2, 3), Tower::heisenberg(3, 1, 2), Tower::padic(5, 1, 4)}) {
    const int D = t.lie_dimension();
    const VtSymbol lie = vt_symbol(t, 1.2, VtMode::Lie);
    const VtSymbol group = vt_symbol(t, 1.2 / D, VtMode::Group);
    CHECK(lie.a == doctest::Approx(1.2 / D));
    for (int n = 0; n <= t.depth(); ++n) CHECK(lie(n) == doctest::Approx(group(n)).epsilon(1e-13));
    const double l = t.prime();
    for (int n = 1; n <= t.depth(); ++n) {
      const double closed = std::pow(l, 1.2 * n) - (1 - std::pow(l, -D)) / (1 - std::pow(l, -(1.2 + D)));
      CHECK(lie(n) == doctest::Approx(closed).epsilon(1e-12));
    }
  }
  CHECK_THROWS(vt_symbol(Tower::vilenkin_product({2, 3}), 1.0, VtMode::Lie));
  CHECK(vt_mode_from_string(to_string(VtMode::Lie)) == VtMode::Lie);
  CHECK_THROWS(vt_mode_from_string("spectral"));
}

TEST_CASE("the operator is self-adjoint and nonnegative") {
  for (const Tower& t : {Tower::vilenkin_product({2, 3, 4, 5}), Tower::heisenberg(3, 1, 2)}) {
    const Dual dual(t);
    const FunctionSample f = gaussian(t, 13), g = gaussian(t, 14);
    const std::complex<double> lhs = inner(vt_apply_spectral(dual, f, 0.7), g);
    const std::complex<double> rhs = inner(f, vt_apply_spectral(dual, g, 0.7));
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));
    CHECK(inner(f, vt_apply_direct(t, f, 0.7)).real() >= 0);
  }
}

TEST_CASE("eigenvalues are comparable to the bracket power") {
  for (const Tower& t : {Tower::vilenkin_product({2, 3, 4, 5, 2}), Tower::padic(3, 1, 5)}) {
    for (double a : {0.5, 1.0, 2.0}) {
      const GammaTable g = gamma(t, a);
      double lower = kInfinity;
      for (int m = 1; m <= t.depth(); ++m) lower = std::min(lower, g.partial[static_cast<std::size_t>(m)] / g.sup);
      const VtSymbol s = vt_symbol(t, a);
      CHECK(s(0) == 0);
      for (int n = 1; n <= t.depth(); ++n) {
        const double ratio = s(n) / std::pow(static_cast<double>(t.quotient_order(n)), a);
        CHECK(ratio >= lower - 1e-12);
        CHECK(ratio <= 1 + 1e-12);
        CHECK(s(n) > s(n - 1));
      }
    }
  }
}

TEST_CASE("Sobolev norm of a constant is its L2 norm") {
  const Tower t = Tower::heisenberg(3, 1, 1);
  const Dual dual(t);
  CHECK(sobolev_norm(dual, FunctionSample::Constant(t.size(), 2.0), 2.0) == doctest::Approx(2.0));
}
