#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vilenkin/tower.hpp"

namespace vilenkin {

/// A unitary irreducible representation of G/G_N.
///
/// Abelian families: a character with frequency tuple `label`
/// (VilenkinProduct: xi_k mod orders[k]; PadicModule: xi in (Z/l^N)^d).
///
/// Heisenberg: label = (xi_1..xi_d, eta_1..eta_d, lambda). With lambda = 0
/// this is the character (x,y,z) -> e^{2 pi i (xi.x + eta.y)/l^N}. Otherwise
/// lambda has conductor l^m (m = N - v(lambda)) and the representation is the
/// twist by (xi, eta) in [0, l^{N-m})^{2d} of the induced representation
/// acting on functions of t in (Z/l^m)^d:
///
///   (pi(a,b,c) phi)(t) = e^{2 pi i u (c + t.b) / l^m} phi(t + a),
///
/// with u = lambda / l^{N-m} a unit mod l^m.
struct Irrep {
  Family family = Family::PadicModule;
  std::vector<std::int64_t> label;
  int dim = 1;
  int level = 0;
  std::int64_t bracket = 1;  // <xi>_G = |G/G_level|
  int conductor = 0;         // Heisenberg induced part: m; 0 for characters
  std::int64_t central_unit = 0;

  bool is_trivial() const { return level == 0; }
  std::string label_string() const;
};

/// Sparse form of a monomial unitary matrix: entry (row, column[row]) equals
/// root^phase[row], where root = e^{2 pi i / Tower::root_order()}.
struct MonomialMatrix {
  std::vector<int> column;
  std::vector<std::int64_t> phase;
};

/// The unitary dual of a truncated tower together with fast evaluators.
class Dual {
 public:
  explicit Dual(Tower tower);

  const Tower& tower() const { return tower_; }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  std::size_t size() const { return irreps_.size(); }
  const Irrep& operator[](std::size_t i) const { return irreps_[i]; }

  /// e^{2 pi i k / root_order}.
  std::complex<double> root(std::int64_t k) const;
  /// The table root(0..root_order-1).
  const std::vector<std::complex<double>>& roots() const { return roots_; }

  /// Evaluate irrep `i` at the element with coordinates `coords`.
  void evaluate(std::size_t i, std::span<const std::int64_t> coords, MonomialMatrix& out) const;
  MonomialMatrix evaluate(std::size_t i, const Element& x) const;

  /// Dense unitary matrix of irrep `i` at x.
  Eigen::MatrixXcd matrix(std::size_t i, const Element& x) const;
  std::complex<double> trace(std::size_t i, const Element& x) const;

  /// Level from the conductor formula (cross-check of the direct test).
  int conductor_level(std::size_t i) const;

  /// Position of the irrep with this label, or size() if absent.
  std::size_t find(std::span<const std::int64_t> label) const;

 private:
  struct InducedLayout {
    int m = 0;
    std::int64_t modulus = 1;              // l^m
    std::vector<std::vector<int>> coords;  // t -> (t_1..t_d)
  };

  int measure_level(std::size_t i) const;
  const InducedLayout& layout(int m) const { return layouts_[static_cast<std::size_t>(m)]; }

  Tower tower_;
  std::vector<Irrep> irreps_;
  std::vector<std::complex<double>> roots_;
  std::vector<InducedLayout> layouts_;
  std::vector<std::int64_t> phase_scale_;  // VilenkinProduct: root_order / m_k
};

/// One representative per equivalence class of irreducibles of G/G_N.
std::vector<Irrep> enumerate_dual(const Tower& t);

/// Dense matrix of pi(x).
Eigen::MatrixXcd rep_matrix(const Dual& dual, std::size_t irrep, const Element& x);

/// Haar integral of the representation over G_n.
Eigen::MatrixXcd rep_integral_over_ball(const Dual& dual, std::size_t irrep, int n);

/// (1/|G|) sum_x Tr pi(x) conj(Tr rho(x)); 1 iff equivalent irreducibles.
std::complex<double> character_gram(const Dual& dual, std::size_t pi, std::size_t rho);

}  // namespace vilenkin
