#include "vilenkin/tower.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace vilenkin {

namespace {

constexpr std::int64_t kMaxSamples = std::int64_t{1} << 40;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out) || out > kMaxSamples) {
    throw std::invalid_argument("tower too large: |G/G_N| exceeds 2^40");
  }
  return out;
}

std::int64_t mod(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

// Odometer over the coordinate box, last coordinate fastest.
bool advance(std::vector<std::int64_t>& c, const std::vector<std::int64_t>& bound) {
  for (std::size_t k = c.size(); k-- > 0;) {
    if (++c[k] < bound[k]) return true;
    c[k] = 0;
  }
  return false;
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::VilenkinProduct: return "vilenkin";
    case Family::PadicModule: return "padic";
    case Family::Heisenberg: return "heisenberg";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  if (name == "vilenkin" || name == "VilenkinProduct") return Family::VilenkinProduct;
  if (name == "padic" || name == "PadicModule") return Family::PadicModule;
  if (name == "heisenberg" || name == "Heisenberg") return Family::Heisenberg;
  throw std::invalid_argument("unknown tower family '" + name + "'");
}

std::int64_t ipow(std::int64_t base, int exponent) {
  std::int64_t out = 1;
  for (int i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

int valuation(std::int64_t v, int ell, int depth) {
  if (v == 0) return depth;
  int k = 0;
  while (k < depth && v % ell == 0) {
    v /= ell;
    ++k;
  }
  return k;
}

double to_double(const Rational& r) { return static_cast<double>(r); }

Tower Tower::make(const TowerDescriptor& d) {
  if (d.depth < 1) throw std::invalid_argument("depth must be >= 1");
  Tower t;
  t.descriptor_ = d;
  const int n_levels = d.depth;

  switch (d.family) {
    case Family::VilenkinProduct: {
      if (static_cast<int>(d.orders.size()) < n_levels) {
        throw std::invalid_argument("VilenkinProduct needs at least `depth` orders");
      }
      t.descriptor_.orders.resize(n_levels);
      t.descriptor_.prime = 0;
      t.descriptor_.dim = 0;
      for (int k = 0; k < n_levels; ++k) {
        const int m = d.orders[k];
        if (m < 2) throw std::invalid_argument("every order must be >= 2");
        t.kappa_.push_back(m);
        t.moduli_.push_back(m);
      }
      std::int64_t lcm = 1;
      for (auto m : t.moduli_) lcm = checked_mul(lcm / std::gcd(lcm, m), m);
      t.root_order_ = lcm;
      break;
    }
    case Family::PadicModule:
    case Family::Heisenberg: {
      if (d.prime < 3) throw std::invalid_argument("prime must be >= 3");
      for (int q = 2; q * q <= d.prime; ++q) {
        if (d.prime % q == 0) throw std::invalid_argument("prime must be prime");
      }
      if (d.dim < 1) throw std::invalid_argument("dim must be >= 1");
      t.descriptor_.orders.clear();
      const int coords = d.family == Family::PadicModule ? d.dim : 2 * d.dim + 1;
      const std::int64_t step = ipow(d.prime, coords);
      const std::int64_t top = ipow(d.prime, n_levels);
      for (int k = 0; k < n_levels; ++k) t.kappa_.push_back(step);
      t.moduli_.assign(coords, top);
      t.root_order_ = top;
      break;
    }
  }

  t.quotient_.push_back(1);
  for (int k = 0; k < n_levels; ++k) t.quotient_.push_back(checked_mul(t.quotient_.back(), t.kappa_[k]));

  t.strides_.assign(t.moduli_.size(), 1);
  for (std::size_t k = t.moduli_.size() - 1; k-- > 0;) t.strides_[k] = t.strides_[k + 1] * t.moduli_[k + 1];
  return t;
}

Tower Tower::vilenkin_product(std::vector<int> orders, int depth) {
  return make({Family::VilenkinProduct, std::move(orders), 0, 0, depth});
}

Tower Tower::vilenkin_product(std::vector<int> orders) {
  const int depth = static_cast<int>(orders.size());
  return vilenkin_product(std::move(orders), depth);
}

Tower Tower::padic(int prime, int dim, int depth) {
  return make({Family::PadicModule, {}, prime, dim, depth});
}

Tower Tower::heisenberg(int prime, int dim, int depth) {
  return make({Family::Heisenberg, {}, prime, dim, depth});
}

std::int64_t Tower::kappa(int n) const {
  if (n < 0 || n >= depth()) throw std::out_of_range("kappa level out of range");
  return kappa_[n];
}

std::int64_t Tower::quotient_order(int n) const {
  if (n < 0 || n > depth()) throw std::out_of_range("level out of range");
  return quotient_[n];
}

Rational Tower::haar_weight(int n) const { return Rational(1, quotient_order(n)); }

bool Tower::constant_order() const {
  return std::all_of(kappa_.begin(), kappa_.end(), [&](auto k) { return k == kappa_.front(); });
}

int Tower::lie_dimension() const {
  switch (family()) {
    case Family::PadicModule: return dim();
    case Family::Heisenberg: return 2 * dim() + 1;
    default: throw std::invalid_argument("Lie dimension needs a p-adic family");
  }
}

Element Tower::identity() const { return Element{std::vector<std::int64_t>(moduli_.size(), 0)}; }

Element Tower::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != moduli_.size()) throw std::invalid_argument("element: wrong coordinate count");
  for (std::size_t k = 0; k < coords.size(); ++k) coords[k] = mod(coords[k], moduli_[k]);
  return Element{std::move(coords)};
}

void Tower::validate(const Element& x) const {
  if (x.coords.size() != moduli_.size()) throw std::invalid_argument("element does not belong to this tower");
  for (std::size_t k = 0; k < x.coords.size(); ++k) {
    if (x.coords[k] < 0 || x.coords[k] >= moduli_[k]) {
      throw std::invalid_argument("element does not belong to this tower");
    }
  }
}

Element Tower::multiply(const Element& x, const Element& y) const {
  validate(x);
  validate(y);
  Element out{std::vector<std::int64_t>(moduli_.size())};
  for (std::size_t k = 0; k < moduli_.size(); ++k) out.coords[k] = (x.coords[k] + y.coords[k]) % moduli_[k];
  if (family() == Family::Heisenberg) {
    const int d = dim();
    const std::int64_t m = moduli_.back();
    std::int64_t z = out.coords[2 * d];
    for (int j = 0; j < d; ++j) z = (z + (x.coords[j] * y.coords[d + j]) % m) % m;
    out.coords[2 * d] = z;
  }
  return out;
}

Element Tower::inverse(const Element& x) const {
  validate(x);
  Element out{std::vector<std::int64_t>(moduli_.size())};
  for (std::size_t k = 0; k < moduli_.size(); ++k) out.coords[k] = mod(-x.coords[k], moduli_[k]);
  if (family() == Family::Heisenberg) {
    // (x, y, z)^{-1} = (-x, -y, -z + x.y)
    const int d = dim();
    const std::int64_t m = moduli_.back();
    std::int64_t z = out.coords[2 * d];
    for (int j = 0; j < d; ++j) z = (z + x.coords[j] * x.coords[d + j]) % m;
    out.coords[2 * d] = z;
  }
  return out;
}

Index Tower::index(const Element& x) const {
  validate(x);
  Index i = 0;
  for (std::size_t k = 0; k < moduli_.size(); ++k) i += x.coords[k] * strides_[k];
  return i;
}

Element Tower::at(Index i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("sample index out of range");
  Element out{std::vector<std::int64_t>(moduli_.size())};
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    out.coords[k] = i / strides_[k];
    i %= strides_[k];
  }
  return out;
}

int Tower::depth_of(const Element& x) const {
  validate(x);
  const int n = depth();
  if (family() == Family::VilenkinProduct) {
    for (int k = 0; k < n; ++k) {
      if (x.coords[k] != 0) return k;
    }
    return n;
  }
  int v = n;
  for (auto c : x.coords) v = std::min(v, valuation(c, prime(), n));
  return v;
}

DepthNorm Tower::depth_and_norm(const Element& x) const {
  DepthNorm out;
  out.depth = depth_of(x);
  out.at_resolution = out.depth == depth();
  out.norm = out.at_resolution ? Rational(0) : haar_weight(out.depth);
  if (family() != Family::VilenkinProduct) {
    out.lie_norm = out.at_resolution ? Rational(0) : Rational(1, ipow(prime(), out.depth));
  }
  return out;
}

std::vector<Element> Tower::enumerate_cosets(int n) const {
  if (n < 0 || n > depth()) throw std::out_of_range("enumerate_cosets: level out of range");
  std::vector<std::int64_t> bound(moduli_.size());
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    if (family() == Family::VilenkinProduct) {
      bound[k] = static_cast<int>(k) < n ? moduli_[k] : 1;
    } else {
      bound[k] = ipow(prime(), n);
    }
  }
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(quotient_order(n)));
  std::vector<std::int64_t> c(moduli_.size(), 0);
  do {
    out.push_back(Element{c});
  } while (advance(c, bound));
  return out;
}

std::vector<Element> Tower::enumerate_subgroup(int n) const {
  if (n < 0 || n > depth()) throw std::out_of_range("enumerate_subgroup: level out of range");
  std::vector<std::int64_t> bound(moduli_.size());
  std::vector<std::int64_t> scale(moduli_.size(), 1);
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    if (family() == Family::VilenkinProduct) {
      bound[k] = static_cast<int>(k) < n ? 1 : moduli_[k];
    } else {
      scale[k] = ipow(prime(), n);
      bound[k] = moduli_[k] / scale[k];
    }
  }
  std::vector<Element> out;
  std::vector<std::int64_t> c(moduli_.size(), 0);
  do {
    Element e{c};
    for (std::size_t k = 0; k < c.size(); ++k) e.coords[k] *= scale[k];
    out.push_back(std::move(e));
  } while (advance(c, bound));
  return out;
}

std::vector<Element> Tower::subgroup_generators(int n) const {
  if (n < 0 || n > depth()) throw std::out_of_range("subgroup_generators: level out of range");
  std::vector<Element> out;
  if (n == depth()) return out;
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    Element e = identity();
    if (family() == Family::VilenkinProduct) {
      if (static_cast<int>(k) < n) continue;
      e.coords[k] = 1;
    } else {
      e.coords[k] = ipow(prime(), n);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Index> Tower::left_translation_table(const Element& h) const {
  validate(h);
  const std::size_t dims = moduli_.size();
  std::vector<Index> perm(static_cast<std::size_t>(size()));
  std::vector<std::int64_t> c(dims, 0);
  const bool heis = family() == Family::Heisenberg;
  const int d = dim();
  Index i = 0;
  do {
    Index j = 0;
    for (std::size_t k = 0; k < dims; ++k) {
      std::int64_t v = h.coords[k] + c[k];
      if (heis && static_cast<int>(k) == 2 * d) {
        for (int q = 0; q < d; ++q) v += h.coords[q] * c[d + q];
      }
      j += (v % moduli_[k]) * strides_[k];
    }
    perm[static_cast<std::size_t>(i++)] = j;
  } while (advance(c, moduli_));
  return perm;
}

std::vector<int> Tower::depth_table() const {
  std::vector<int> out(static_cast<std::size_t>(size()));
  for (Index i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = depth_of(at(i));
  return out;
}

std::complex<double> haar_average(const Tower& t, const FunctionSample& f) {
  if (f.size() != t.size()) throw std::invalid_argument("haar_average: sample size mismatch");
  return f.mean();
}

}  // namespace vilenkin
