#include "vilenkin/transform.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <map>
#include <stdexcept>

namespace vilenkin {

namespace {

void check_size(const Tower& t, const FunctionSample& f) {
  if (f.size() != t.size()) throw std::invalid_argument("function sample does not match the tower size");
}

void check_blocks(const Dual& dual, const DualCoefficients& c) {
  if (c.size() != dual.size()) throw std::invalid_argument("coefficients missing for some irreps");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].rows() != dual[i].dim || c[i].cols() != dual[i].dim)
      throw std::invalid_argument("coefficient block has the wrong shape");
  }
}

// In-place DFT of a sample vector along coordinate axes first_axis.. of the
// tower: e^{-2 pi i xi.x} when forward (unscaled both ways).
void axis_dft(const Tower& t, Eigen::VectorXcd& data, bool forward, std::size_t first_axis = 0) {
  std::map<Index, Eigen::FFT<double>> plans;
  Index stride = 1;
  for (std::size_t k = t.coordinate_count(); k-- > first_axis;) {
    const Index m = t.modulus(k);
    Eigen::FFT<double>& fft = plans[m];
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    std::vector<std::complex<double>> line(static_cast<std::size_t>(m)), out(static_cast<std::size_t>(m));
    const Index block = stride * m;
    for (Index base = 0; base < t.size(); base += block) {
      for (Index off = 0; off < stride; ++off) {
        for (Index j = 0; j < m; ++j) line[static_cast<std::size_t>(j)] = data[base + off + j * stride];
        if (forward)
          fft.fwd(out.data(), line.data(), m);
        else
          fft.inv(out.data(), line.data(), m);
        for (Index j = 0; j < m; ++j) data[base + off + j * stride] = out[static_cast<std::size_t>(j)];
      }
    }
    stride = block;
  }
}

// Heisenberg entries through the partial DFT F(a; beta, gamma) over (y, z):
// pi(a,b,c)_{t, t+a} = e^{2 pi i (xi.a + beta.b + gamma c) / L} with
// beta = eta + lambda t and gamma = lambda, L = l^N. Visits, for every irrep
// i, row t and x-coordinate a, the slot of F, the column t + a and the phase
// xi.a mod L.
template <class Visit>
void heisenberg_slots(const Dual& dual, Visit&& visit) {
  const Tower& t = dual.tower();
  const auto d = static_cast<std::size_t>(t.dim());
  const std::int64_t L = t.modulus(0);
  const Index slice = ipow(L, static_cast<int>(d) + 1);
  const Index n_a = ipow(L, static_cast<int>(d));
  std::vector<std::int64_t> a(d), tv(d);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const Irrep& r = dual[i];
    const std::int64_t mod = r.conductor == 0 ? 1 : ipow(t.prime(), r.conductor);
    const std::int64_t lambda = r.label[2 * d];
    std::fill(tv.begin(), tv.end(), 0);
    for (int row = 0; row < r.dim; ++row) {
      Index slot = 0;
      for (std::size_t j = 0; j < d; ++j) slot = slot * L + (r.label[d + j] + lambda * tv[j]) % L;
      slot = slot * L + lambda;
      std::fill(a.begin(), a.end(), 0);
      for (Index ai = 0; ai < n_a; ++ai) {
        std::int64_t phase = 0, col = 0;
        for (std::size_t j = 0; j < d; ++j) {
          phase += r.label[j] * a[j];
          col = col * mod + (tv[j] + a[j]) % mod;
        }
        visit(i, row, static_cast<int>(col), ai * slice + slot, phase % L);
        for (std::size_t j = d; j-- > 0;) {
          if (++a[j] < L) break;
          a[j] = 0;
        }
      }
      for (std::size_t j = d; j-- > 0;) {
        if (++tv[j] < mod) break;
        tv[j] = 0;
      }
    }
  }
}

}  // namespace

DualCoefficients zero_coefficients(const Dual& dual) {
  DualCoefficients c;
  c.blocks.reserve(dual.size());
  for (const Irrep& r : dual.irreps()) c.blocks.push_back(Eigen::MatrixXcd::Zero(r.dim, r.dim));
  return c;
}

DualCoefficients forward(const Dual& dual, const FunctionSample& f) {
  const Tower& t = dual.tower();
  check_size(t, f);
  DualCoefficients c = zero_coefficients(dual);
  const double w = 1.0 / static_cast<double>(t.size());
  if (t.is_abelian()) {
    // irreps are enumerated in sample-index order of their frequency tuples
    Eigen::VectorXcd data = f;
    axis_dft(t, data, true);
    for (std::size_t i = 0; i < c.size(); ++i) c[i](0, 0) = data[static_cast<Eigen::Index>(i)] * w;
    return c;
  }
  const auto& roots = dual.roots();
  const std::int64_t R = t.root_order();
  Eigen::VectorXcd partial = f;
  axis_dft(t, partial, true, static_cast<std::size_t>(t.dim()));
  heisenberg_slots(dual, [&](std::size_t i, int row, int col, Index slot, std::int64_t phase) {
    c.blocks[i](col, row) += partial[slot] * roots[static_cast<std::size_t>(phase == 0 ? 0 : R - phase)];
  });
  for (auto& b : c.blocks) b *= w;
  return c;
}

DualCoefficients forward_reference(const Dual& dual, const FunctionSample& f) {
  const Tower& t = dual.tower();
  check_size(t, f);
  DualCoefficients c = zero_coefficients(dual);
  for (Index x = 0; x < t.size(); ++x) {
    const Element e = t.at(x);
    for (std::size_t i = 0; i < dual.size(); ++i) c.blocks[i] += f[x] * dual.matrix(i, e).adjoint();
  }
  for (auto& b : c.blocks) b /= static_cast<double>(t.size());
  return c;
}

FunctionSample inverse(const Dual& dual, const DualCoefficients& c) {
  check_blocks(dual, c);
  const Tower& t = dual.tower();
  if (t.is_abelian()) {
    Eigen::VectorXcd data(t.size());
    for (std::size_t i = 0; i < c.size(); ++i) data[static_cast<Eigen::Index>(i)] = c[i](0, 0);
    axis_dft(t, data, false);
    return data;
  }
  FunctionSample f = FunctionSample::Zero(t.size());
  const auto& roots = dual.roots();
  heisenberg_slots(dual, [&](std::size_t i, int row, int col, Index slot, std::int64_t phase) {
    f[slot] += static_cast<double>(dual[i].dim) * roots[static_cast<std::size_t>(phase)] * c.blocks[i](col, row);
  });
  axis_dft(t, f, false, static_cast<std::size_t>(t.dim()));
  return f;
}

FunctionSample inverse_reference(const Dual& dual, const DualCoefficients& c) {
  check_blocks(dual, c);
  const Tower& t = dual.tower();
  FunctionSample f(t.size());
  for (Index x = 0; x < t.size(); ++x) {
    const Element e = t.at(x);
    std::complex<double> acc = 0;
    for (std::size_t i = 0; i < dual.size(); ++i) acc += static_cast<double>(dual[i].dim) * (dual.matrix(i, e) * c[i]).trace();
    f[x] = acc;
  }
  return f;
}

double lp_norm(const FunctionSample& f, double p) {
  if (p < 1) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (f.size() == 0) return 0.0;
  if (std::isinf(p)) return f.cwiseAbs().maxCoeff();
  if (p == 2) return std::sqrt(f.squaredNorm() / static_cast<double>(f.size()));
  return std::pow(f.cwiseAbs().array().pow(p).sum() / static_cast<double>(f.size()), 1.0 / p);
}

double dual_lq_norm(const Dual& dual, const DualCoefficients& c, double q) {
  if (q < 1) throw std::invalid_argument("dual_lq_norm: q must be >= 1");
  check_blocks(dual, c);
  if (std::isinf(q)) {
    double best = 0;
    for (std::size_t i = 0; i < c.size(); ++i) best = std::max(best, c[i].norm() / std::sqrt(static_cast<double>(dual[i].dim)));
    return best;
  }
  double acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double hs = c[i].norm();
    if (hs == 0) continue;
    acc += std::pow(static_cast<double>(dual[i].dim), 2.0 - q / 2.0) * std::pow(hs, q);
  }
  return std::pow(acc, 1.0 / q);
}

double plancherel_sum(const Dual& dual, const DualCoefficients& c) {
  check_blocks(dual, c);
  double acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) acc += dual[i].dim * c[i].squaredNorm();
  return acc;
}

FunctionSample translate(const Tower& t, const FunctionSample& f, const Element& h) {
  check_size(t, f);
  t.validate(h);
  const std::vector<Index> perm = t.left_translation_table(h);
  FunctionSample g(f.size());
  for (Index i = 0; i < t.size(); ++i) g[i] = f[perm[static_cast<std::size_t>(i)]];
  return g;
}

double hausdorff_young_gap(const Dual& dual, const FunctionSample& f, double p) {
  if (!(p > 1 && p <= 2)) throw std::invalid_argument("hausdorff_young_gap: p must lie in (1, 2]");
  const double q = p / (p - 1);
  return lp_norm(f, p) - dual_lq_norm(dual, forward(dual, f), q);
}

double plancherel_residual(const Dual& dual, const FunctionSample& f, const DualCoefficients& c) {
  const double lhs = f.squaredNorm() / static_cast<double>(f.size());
  const double rhs = plancherel_sum(dual, c);
  return lhs == 0 ? std::abs(rhs) : std::abs(lhs - rhs) / lhs;
}

nlohmann::json coefficients_to_json(const Dual& dual, const DualCoefficients& c) {
  check_blocks(dual, c);
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Irrep& r = dual[i];
    nlohmann::json m = nlohmann::json::array();
    for (Eigen::Index a = 0; a < c[i].rows(); ++a)
      for (Eigen::Index b = 0; b < c[i].cols(); ++b) m.push_back({c[i](a, b).real(), c[i](a, b).imag()});
    out.push_back({{"label", r.label}, {"dim", r.dim}, {"level", r.level}, {"bracket", r.bracket}, {"matrix", m}});
  }
  return out;
}

DualCoefficients coefficients_from_json(const Dual& dual, const nlohmann::json& j) {
  DualCoefficients c = zero_coefficients(dual);
  std::vector<bool> seen(dual.size(), false);
  for (const auto& entry : j) {
    const auto label = entry.at("label").get<std::vector<std::int64_t>>();
    const std::size_t i = dual.find(label);
    if (i == dual.size()) throw std::invalid_argument("unknown irrep label in coefficients");
    const auto& m = entry.at("matrix");
    const int d = dual[i].dim;
    if (m.size() != static_cast<std::size_t>(d) * d) throw std::invalid_argument("coefficient matrix has the wrong size");
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const auto& z = m[static_cast<std::size_t>(a * d + b)];
        c[i](a, b) = {z.at(0).get<double>(), z.at(1).get<double>()};
      }
    seen[i] = true;
  }
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("coefficients missing for some irreps");
  }
  return c;
}

}  // namespace vilenkin
