#include "vilenkin/dual.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vilenkin {

namespace {

std::int64_t mod(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

bool advance(std::vector<std::int64_t>& c, std::int64_t bound) {
  for (std::size_t k = c.size(); k-- > 0;) {
    if (++c[k] < bound) return true;
    c[k] = 0;
  }
  return false;
}

bool advance(std::vector<std::int64_t>& c, const std::vector<std::int64_t>& bound) {
  for (std::size_t k = c.size(); k-- > 0;) {
    if (++c[k] < bound[k]) return true;
    c[k] = 0;
  }
  return false;
}

bool is_identity(const MonomialMatrix& m, std::int64_t root_order) {
  for (std::size_t t = 0; t < m.column.size(); ++t) {
    if (m.column[t] != static_cast<int>(t) || mod(m.phase[t], root_order) != 0) return false;
  }
  return true;
}

}  // namespace

std::string Irrep::label_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < label.size(); ++i) os << (i ? " " : "") << label[i];
  os << ')';
  return os.str();
}

std::vector<Irrep> enumerate_dual(const Tower& t) {
  std::vector<Irrep> out;
  const int n = t.depth();
  switch (t.family()) {
    case Family::VilenkinProduct:
    case Family::PadicModule: {
      std::vector<std::int64_t> bound(t.coordinate_count());
      for (std::size_t k = 0; k < bound.size(); ++k) bound[k] = t.modulus(k);
      std::vector<std::int64_t> xi(bound.size(), 0);
      do {
        Irrep r;
        r.family = t.family();
        r.label = xi;
        out.push_back(std::move(r));
      } while (advance(xi, bound));
      break;
    }
    case Family::Heisenberg: {
      const int d = t.dim();
      const int ell = t.prime();
      const std::int64_t top = ipow(ell, n);
      // characters of the abelianization
      std::vector<std::int64_t> xe(2 * d, 0);
      do {
        Irrep r;
        r.family = Family::Heisenberg;
        r.label = xe;
        r.label.push_back(0);
        out.push_back(std::move(r));
      } while (advance(xe, top));
      // representations with a central character of conductor l^m
      for (int m = 1; m <= n; ++m) {
        const std::int64_t lm = ipow(ell, m);
        const std::int64_t twist = ipow(ell, n - m);
        for (std::int64_t u = 1; u < lm; ++u) {
          if (u % ell == 0) continue;
          std::vector<std::int64_t> tw(2 * d, 0);
          do {
            Irrep r;
            r.family = Family::Heisenberg;
            r.label = tw;
            r.label.push_back(u * twist);
            r.conductor = m;
            r.central_unit = u;
            r.dim = static_cast<int>(ipow(ell, m * d));
            out.push_back(std::move(r));
          } while (advance(tw, twist));
        }
      }
      break;
    }
  }
  return out;
}

Dual::Dual(Tower tower) : tower_(std::move(tower)), irreps_(enumerate_dual(tower_)) {
  const std::int64_t R = tower_.root_order();
  roots_.resize(static_cast<std::size_t>(R));
  for (std::int64_t k = 0; k < R; ++k) {
    roots_[static_cast<std::size_t>(k)] =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(R));
  }
  if (tower_.family() == Family::VilenkinProduct) {
    for (std::size_t k = 0; k < tower_.coordinate_count(); ++k) phase_scale_.push_back(R / tower_.modulus(k));
  }
  if (tower_.family() == Family::Heisenberg) {
    const int d = tower_.dim();
    layouts_.resize(static_cast<std::size_t>(tower_.depth()) + 1);
    for (int m = 1; m <= tower_.depth(); ++m) {
      InducedLayout& lay = layouts_[static_cast<std::size_t>(m)];
      lay.m = m;
      lay.modulus = ipow(tower_.prime(), m);
      std::vector<std::int64_t> tc(static_cast<std::size_t>(d), 0);
      do {
        lay.coords.emplace_back(tc.begin(), tc.end());
      } while (advance(tc, lay.modulus));
    }
  }
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    irreps_[i].level = measure_level(i);
    irreps_[i].bracket = tower_.quotient_order(irreps_[i].level);
  }
}

std::complex<double> Dual::root(std::int64_t k) const {
  return roots_[static_cast<std::size_t>(mod(k, tower_.root_order()))];
}

void Dual::evaluate(std::size_t i, std::span<const std::int64_t> x, MonomialMatrix& out) const {
  const Irrep& r = irreps_[i];
  const std::int64_t R = tower_.root_order();
  out.column.resize(static_cast<std::size_t>(r.dim));
  out.phase.resize(static_cast<std::size_t>(r.dim));
  switch (tower_.family()) {
    case Family::VilenkinProduct: {
      std::int64_t ph = 0;
      for (std::size_t k = 0; k < x.size(); ++k) ph += r.label[k] * x[k] * phase_scale_[k];
      out.column[0] = 0;
      out.phase[0] = ph % R;
      return;
    }
    case Family::PadicModule: {
      std::int64_t ph = 0;
      for (std::size_t k = 0; k < x.size(); ++k) ph = (ph + r.label[k] * x[k]) % R;
      out.column[0] = 0;
      out.phase[0] = ph;
      return;
    }
    case Family::Heisenberg: {
      const int d = tower_.dim();
      std::int64_t twist = 0;
      for (int k = 0; k < 2 * d; ++k) twist = (twist + r.label[k] * x[k]) % R;
      if (r.conductor == 0) {
        out.column[0] = 0;
        out.phase[0] = twist;
        return;
      }
      const InducedLayout& lay = layout(r.conductor);
      const std::int64_t lm = lay.modulus;
      const std::int64_t scale = R / lm;
      const std::int64_t c = x[2 * d] % lm;
      for (std::size_t t = 0; t < lay.coords.size(); ++t) {
        const auto& tc = lay.coords[t];
        std::int64_t col = 0;
        std::int64_t tb = c;
        for (int j = 0; j < d; ++j) {
          col = col * lm + (tc[j] + x[j]) % lm;
          tb += tc[j] * (x[d + j] % lm);
        }
        out.column[t] = static_cast<int>(col);
        out.phase[t] = (twist + scale * ((r.central_unit * (tb % lm)) % lm)) % R;
      }
      return;
    }
  }
}

MonomialMatrix Dual::evaluate(std::size_t i, const Element& x) const {
  tower_.validate(x);
  MonomialMatrix m;
  evaluate(i, x.coords, m);
  return m;
}

Eigen::MatrixXcd Dual::matrix(std::size_t i, const Element& x) const {
  const MonomialMatrix m = evaluate(i, x);
  const int d = irreps_[i].dim;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int t = 0; t < d; ++t) out(t, m.column[t]) = root(m.phase[t]);
  return out;
}

std::complex<double> Dual::trace(std::size_t i, const Element& x) const {
  const MonomialMatrix m = evaluate(i, x);
  std::complex<double> tr = 0;
  for (std::size_t t = 0; t < m.column.size(); ++t) {
    if (m.column[t] == static_cast<int>(t)) tr += root(m.phase[t]);
  }
  return tr;
}

int Dual::measure_level(std::size_t i) const {
  MonomialMatrix m;
  for (int n = 0; n < tower_.depth(); ++n) {
    bool trivial = true;
    for (const Element& g : tower_.subgroup_generators(n)) {
      evaluate(i, g.coords, m);
      if (!is_identity(m, tower_.root_order())) {
        trivial = false;
        break;
      }
    }
    if (trivial) return n;
  }
  return tower_.depth();
}

int Dual::conductor_level(std::size_t i) const {
  const Irrep& r = irreps_[i];
  const int n = tower_.depth();
  if (tower_.family() == Family::VilenkinProduct) {
    for (int k = n; k-- > 0;) {
      if (r.label[static_cast<std::size_t>(k)] != 0) return k + 1;
    }
    return 0;
  }
  int level = r.conductor;
  const std::size_t freq = tower_.family() == Family::Heisenberg ? r.label.size() - 1 : r.label.size();
  for (std::size_t k = 0; k < freq; ++k) level = std::max(level, n - valuation(r.label[k], tower_.prime(), n));
  return level;
}

std::size_t Dual::find(std::span<const std::int64_t> label) const {
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    if (std::equal(label.begin(), label.end(), irreps_[i].label.begin(), irreps_[i].label.end())) return i;
  }
  return irreps_.size();
}

Eigen::MatrixXcd rep_matrix(const Dual& dual, std::size_t irrep, const Element& x) { return dual.matrix(irrep, x); }

Eigen::MatrixXcd rep_integral_over_ball(const Dual& dual, std::size_t irrep, int n) {
  const Tower& t = dual.tower();
  if (n < 0 || n > t.depth()) throw std::out_of_range("rep_integral_over_ball: level out of range");
  const int d = dual[irrep].dim;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  MonomialMatrix m;
  for (const Element& x : t.enumerate_subgroup(n)) {
    dual.evaluate(irrep, x.coords, m);
    for (int r = 0; r < d; ++r) acc(r, m.column[static_cast<std::size_t>(r)]) += dual.root(m.phase[static_cast<std::size_t>(r)]);
  }
  return acc / static_cast<double>(t.size());
}

std::complex<double> character_gram(const Dual& dual, std::size_t pi, std::size_t rho) {
  const Tower& t = dual.tower();
  std::complex<double> acc = 0;
  for (Index i = 0; i < t.size(); ++i) {
    const Element x = t.at(i);
    acc += dual.trace(pi, x) * std::conj(dual.trace(rho, x));
  }
  return acc / static_cast<double>(t.size());
}

}  // namespace vilenkin
