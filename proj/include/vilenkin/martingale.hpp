#pragma once

// Martingales on the cylinder filtration, the martingale maximal function,
// H_p quasi-norms and p-atoms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vilenkin/group.hpp"
#include "vilenkin/level_function.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

/// Components f^(0), ..., f^(N); f^(n) lives at level n and
/// E_n f^(n+1) = f^(n).
class Martingale {
 public:
  /// Validates levels and adaptedness (tolerance relative to the component scale).
  static Martingale from_components(std::vector<LevelFunction> components, double tol = 1e-10) {
    if (components.empty()) throw std::invalid_argument("Martingale: no components");
    const VilenkinBase& base = components.front().base();
    for (std::size_t n = 0; n < components.size(); ++n) {
      if (!(components[n].base() == base)) throw std::invalid_argument("Martingale: mixed bases");
      if (components[n].level() != n) {
        throw std::invalid_argument("Martingale: component " + std::to_string(n) + " is not at level " +
                                    std::to_string(n));
      }
    }
    for (std::size_t n = 0; n + 1 < components.size(); ++n) {
      const double scale = std::max(1.0, components[n + 1].sup_norm());
      const double gap = max_abs_difference(conditional_expectation(components[n + 1], n), components[n]);
      if (gap > tol * scale) {
        throw std::invalid_argument("Martingale: adaptedness fails between levels " + std::to_string(n) + " and " +
                                    std::to_string(n + 1) + " (gap " + std::to_string(gap) + ")");
      }
    }
    return Martingale(std::move(components));
  }

  const VilenkinBase& base() const noexcept { return components_.front().base(); }
  std::size_t top_level() const noexcept { return components_.size() - 1; }
  const LevelFunction& component(std::size_t n) const { return components_.at(n); }
  std::span<const LevelFunction> components() const noexcept { return components_; }
  const LevelFunction& top() const noexcept { return components_.back(); }

  /// fhat(i): the coefficient of the top component, exact for i < M_N.
  cplx fourier_coefficient(std::uint64_t i) const {
    if (i >= base().order(top_level())) throw std::out_of_range("fourier_coefficient: index not resolvable");
    return forward(top()).coeffs[i];
  }

 private:
  explicit Martingale(std::vector<LevelFunction> c) : components_(std::move(c)) {}
  std::vector<LevelFunction> components_;
};

/// (E_0 f, ..., E_N f) = (S_{M_0} f, ..., S_{M_N} f) for f at level N.
inline Martingale martingale_from_function(const LevelFunction& f) {
  std::vector<LevelFunction> c;
  c.reserve(f.level() + 1);
  for (std::size_t n = 0; n <= f.level(); ++n) c.push_back(conditional_expectation(f, n));
  return Martingale::from_components(std::move(c));
}

/// f* = sup_n |f^(n)| at the top level.
inline LevelFunction maximal_function(const Martingale& m) {
  const std::size_t N = m.top_level();
  std::vector<cplx> v(m.base().order(N), 0.0);
  for (const LevelFunction& c : m.components()) {
    const std::uint64_t b = m.base().block(c.level(), N);
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = std::max(v[r].real(), std::abs(c[r / b]));
  }
  return LevelFunction(m.base(), N, std::move(v));
}

inline double hardy_quasinorm(const Martingale& m, double p) {
  detail::require_positive_exponent(p);
  return lp_quasinorm(maximal_function(m), p);
}

inline double hardy_quasinorm(const LevelFunction& f, double p) {
  return hardy_quasinorm(martingale_from_function(f), p);
}

// -- atoms --------------------------------------------------------------------

struct PAtom {
  double p = 1.0;
  Cylinder support;
  LevelFunction values;
};

struct AtomCheck {
  bool valid = false;
  bool exponent_ok = false;
  bool mean_zero = false;
  bool sup_bound = false;
  bool supported = false;
  double mean = 0.0;   // |integral over the support|
  double sup = 0.0;    // ||a||_inf
  double bound = 0.0;  // mu(I)^{-1/p}
  std::string diagnostics;
};

inline AtomCheck validate_atom(const PAtom& a, double tol = kTolerance) {
  AtomCheck c;
  const VilenkinBase& base = a.values.base();
  std::ostringstream why;
  c.exponent_ok = a.p > 0.0 && a.p <= 1.0;
  if (!c.exponent_ok) why << "exponent p=" << a.p << " outside (0,1]; ";

  const std::size_t level = std::max(a.values.level(), a.support.level);
  const LevelFunction v = a.values.refine(level);
  auto [lo, hi] = base.rank_block(a.support, level);
  cplx integral = 0.0;
  c.supported = true;
  for (std::size_t r = 0; r < v.size(); ++r) {
    const bool inside = r >= lo && r < hi;
    if (inside) integral += v[r];
    else if (std::abs(v[r]) > tol) c.supported = false;
    c.sup = std::max(c.sup, std::abs(v[r]));
  }
  integral /= static_cast<double>(v.size());
  c.mean = std::abs(integral);
  c.bound = c.exponent_ok ? std::pow(static_cast<double>(base.order(a.support.level)), 1.0 / a.p) : 0.0;
  c.mean_zero = c.mean <= tol * std::max(1.0, c.bound);
  c.sup_bound = c.exponent_ok && c.sup <= c.bound * (1.0 + tol);
  if (!c.supported) why << "nonzero values outside the support cylinder; ";
  if (!c.mean_zero) why << "integral over support is " << c.mean << ", not 0; ";
  if (c.exponent_ok && !c.sup_bound) why << "sup norm " << c.sup << " exceeds mu(I)^{-1/p} = " << c.bound << "; ";
  c.valid = c.exponent_ok && c.supported && c.mean_zero && c.sup_bound;
  c.diagnostics = c.valid ? "ok" : why.str();
  return c;
}

/// sum_k mu_k S_{M_n} a_k together with the budget sum_k |mu_k|^p.
struct AtomicAssembly {
  LevelFunction component;
  double budget = 0.0;
};

inline AtomicAssembly assemble_from_atoms(const VilenkinBase& base, std::span<const PAtom> atoms,
                                          std::span<const double> coeffs, std::size_t n) {
  if (atoms.size() != coeffs.size()) throw std::invalid_argument("assemble_from_atoms: length mismatch");
  if (n > base.depth()) throw std::out_of_range("assemble_from_atoms: level exceeds depth");
  AtomicAssembly out{LevelFunction::zero(base, n), 0.0};
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const PAtom& a = atoms[i];
    if (!(a.values.base() == base)) throw std::invalid_argument("assemble_from_atoms: atom on a different base");
    const std::size_t lvl = std::max(n, a.values.level());
    const LevelFunction part = conditional_expectation(a.values.refine(lvl), n);
    out.component = out.component + coeffs[i] * part;
    out.budget += std::pow(std::abs(coeffs[i]), a.p);
  }
  return out;
}

/// The martingale (f^(0), ..., f^(N)) of an atomic series, N = base depth.
inline Martingale assemble_martingale(const VilenkinBase& base, std::span<const PAtom> atoms,
                                      std::span<const double> coeffs) {
  std::vector<LevelFunction> c;
  for (std::size_t n = 0; n <= base.depth(); ++n) c.push_back(assemble_from_atoms(base, atoms, coeffs, n).component);
  return Martingale::from_components(std::move(c));
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Saturated random p-atom at resolution `level`:
/// support I_s(anchor) with s uniform in [0, level - 1], i.i.d. uniform
/// [-1, 1] values on the level cylinders inside, projected to mean zero and
/// rescaled so that ||a||_inf = mu(I)^{-1/p} exactly.
inline PAtom random_atom(const VilenkinBase& base, double p, std::size_t level, std::mt19937_64& rng) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("random_atom: p must lie in (0, 1]");
  if (level < 1 || level > base.depth()) throw std::out_of_range("random_atom: level outside [1, K]");
  const std::size_t s = static_cast<std::size_t>(rng() % level);
  const std::uint64_t anchor = rng() % base.order(s);
  const Cylinder support = base.cylinder_of_rank(anchor, s);
  auto [lo, hi] = base.rank_block(support, level);
  const double amp = std::pow(static_cast<double>(base.order(s)), 1.0 / p);

  std::vector<double> inner(hi - lo);
  double peak = 0.0;
  while (!(peak > 0.0)) {
    double mean = 0.0;
    for (double& v : inner) {
      v = 2.0 * uniform01(rng) - 1.0;
      mean += v;
    }
    mean /= static_cast<double>(inner.size());
    peak = 0.0;
    for (double& v : inner) {
      v -= mean;
      peak = std::max(peak, std::abs(v));
    }
  }
  std::vector<cplx> values(base.order(level), 0.0);
  for (std::size_t i = 0; i < inner.size(); ++i) values[lo + i] = inner[i] * (amp / peak);
  return PAtom{p, support, LevelFunction(base, level, std::move(values))};
}

}  // namespace vilenkin
