#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace vilenkin {

using Rational = boost::multiprecision::cpp_rational;
using Index = std::int64_t;

/// A complex-valued function on G/G_N, indexed by Tower::index().
using FunctionSample = Eigen::VectorXcd;

enum class Family { VilenkinProduct, PadicModule, Heisenberg };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

/// Serializable description of a tower: {family, orders | prime, dim, depth}.
struct TowerDescriptor {
  Family family = Family::PadicModule;
  std::vector<int> orders;  // VilenkinProduct only
  int prime = 0;            // PadicModule / Heisenberg
  int dim = 1;              // PadicModule / Heisenberg
  int depth = 1;

  bool operator==(const TowerDescriptor&) const = default;
};

/// A point of G/G_N in canonical coordinates (least nonnegative residues).
///
/// VilenkinProduct: (x_0, ..., x_{N-1}), x_k mod orders[k].
/// PadicModule:     (x_1, ..., x_d), each mod l^N.
/// Heisenberg:      (x_1..x_d, y_1..y_d, z), each mod l^N.
struct Element {
  std::vector<std::int64_t> coords;

  bool operator==(const Element&) const = default;
};

struct DepthNorm {
  int depth = 0;            // largest n <= N with x in G_n
  bool at_resolution = false;  // x in G_N: indistinguishable from e
  Rational norm;            // |x|_G = |G_depth|, or 0 at resolution
  std::optional<Rational> lie_norm;  // max_j |x_j|_l (p-adic families)
};

/// A compact Vilenkin group truncated at depth N, modelled through G/G_N.
///
/// Immutable after construction. Haar weights and quotient orders are kept
/// as exact integers; |G_n| = 1 / |G/G_n|.
class Tower {
 public:
  static Tower make(const TowerDescriptor& descriptor);

  static Tower vilenkin_product(std::vector<int> orders, int depth);
  static Tower vilenkin_product(std::vector<int> orders);
  static Tower padic(int prime, int dim, int depth);
  static Tower heisenberg(int prime, int dim, int depth);

  const TowerDescriptor& descriptor() const { return descriptor_; }
  Family family() const { return descriptor_.family; }
  int depth() const { return descriptor_.depth; }
  int prime() const { return descriptor_.prime; }
  int dim() const { return descriptor_.dim; }
  bool is_abelian() const { return family() != Family::Heisenberg; }

  /// kappa_n = |G_n / G_{n+1}|, 0 <= n < N.
  std::int64_t kappa(int n) const;
  /// |G/G_n|, 0 <= n <= N.
  std::int64_t quotient_order(int n) const;
  /// |G_n| as an exact rational.
  Rational haar_weight(int n) const;
  /// |G/G_N|, the number of sample points.
  std::int64_t size() const { return quotient_order(depth()); }
  bool constant_order() const;
  /// Dimension D with |x|_G = ||x||_l^D (p-adic families only).
  int lie_dimension() const;

  std::size_t coordinate_count() const { return moduli_.size(); }
  std::int64_t modulus(std::size_t coordinate) const { return moduli_[coordinate]; }
  /// Common order of every phase appearing in a character value.
  std::int64_t root_order() const { return root_order_; }

  Element identity() const;
  Element element(std::vector<std::int64_t> coords) const;  // reduces mod moduli
  void validate(const Element& x) const;  // throws on mismatched tower

  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;

  Index index(const Element& x) const;
  Element at(Index i) const;

  DepthNorm depth_and_norm(const Element& x) const;
  int depth_of(const Element& x) const;

  /// Canonical representatives of G/G_n inside G/G_N, in index order.
  std::vector<Element> enumerate_cosets(int n) const;
  /// Elements of G_n/G_N.
  std::vector<Element> enumerate_subgroup(int n) const;
  /// A generating set of G_n/G_N (empty for n = N).
  std::vector<Element> subgroup_generators(int n) const;

  /// perm[i] = index(h * at(i)) for every sample index i.
  std::vector<Index> left_translation_table(const Element& h) const;
  /// depth_of(at(i)) for every sample index i.
  std::vector<int> depth_table() const;

 private:
  Tower() = default;

  TowerDescriptor descriptor_;
  std::vector<std::int64_t> kappa_;
  std::vector<std::int64_t> quotient_;
  std::vector<std::int64_t> moduli_;
  std::vector<std::int64_t> strides_;
  std::int64_t root_order_ = 1;
};

/// ell-adic valuation of v modulo ell^depth; v = 0 gives depth.
int valuation(std::int64_t v, int ell, int depth);
std::int64_t ipow(std::int64_t base, int exponent);
double to_double(const Rational& r);

/// (1/|G/G_N|) * sum_x f(x).
std::complex<double> haar_average(const Tower& t, const FunctionSample& f);

}  // namespace vilenkin
