#pragma once

// Step functions on G_m: one complex value per level-N cylinder.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vilenkin/group.hpp"

namespace vilenkin {

using cplx = std::complex<double>;

/// Absolute tolerance for equality of values bounded by M_K.
inline constexpr double kTolerance = 1e-9;

class LevelFunction {
 public:
  LevelFunction(VilenkinBase base, std::size_t level, std::vector<cplx> values)
      : base_(std::move(base)), level_(level), values_(std::move(values)) {
    if (level_ > base_.depth()) {
      throw std::out_of_range("LevelFunction: level " + std::to_string(level_) + " exceeds depth " +
                              std::to_string(base_.depth()));
    }
    if (values_.size() != base_.order(level_)) {
      throw std::invalid_argument("LevelFunction: expected " + std::to_string(base_.order(level_)) +
                                  " values, got " + std::to_string(values_.size()));
    }
  }

  static LevelFunction constant(const VilenkinBase& base, std::size_t level, cplx c) {
    return LevelFunction(base, level, std::vector<cplx>(base.order(level), c));
  }

  static LevelFunction zero(const VilenkinBase& base, std::size_t level) { return constant(base, level, 0.0); }

  static LevelFunction from_real(const VilenkinBase& base, std::size_t level, std::span<const double> v) {
    return LevelFunction(base, level, std::vector<cplx>(v.begin(), v.end()));
  }

  /// scale * 1_{c}, resolved at max(level, c.level).
  static LevelFunction indicator(const VilenkinBase& base, const Cylinder& c, std::size_t level,
                                 cplx scale = 1.0) {
    const std::size_t n = std::max(level, c.level);
    LevelFunction f = zero(base, n);
    auto [lo, hi] = base.rank_block(c, n);
    for (auto r = lo; r < hi; ++r) f.values_[r] = scale;
    return f;
  }

  const VilenkinBase& base() const noexcept { return base_; }
  std::size_t level() const noexcept { return level_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cplx> values() const& noexcept { return values_; }
  std::span<cplx> values() & noexcept { return values_; }
  // a temporary hands over its storage instead of a dangling view
  std::vector<cplx> values() && noexcept { return std::move(values_); }
  cplx operator[](std::size_t rank) const { return values_[rank]; }
  cplx& operator[](std::size_t rank) { return values_[rank]; }

  cplx at(const GroupPoint& x) const { return values_[base_.rank_of(x, level_)]; }

  /// Same function on finer cylinders.
  LevelFunction refine(std::size_t level) const {
    if (level < level_) throw std::invalid_argument("refine: target level below current level");
    if (level == level_) return *this;
    const std::uint64_t rep = base_.block(level_, level);
    std::vector<cplx> v;
    v.reserve(values_.size() * rep);
    for (const cplx& c : values_) v.insert(v.end(), rep, c);
    return LevelFunction(base_, level, std::move(v));
  }

  template <class F>
  LevelFunction map(F&& fn) const {
    std::vector<cplx> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), std::forward<F>(fn));
    return LevelFunction(base_, level_, std::move(v));
  }

  double sup_norm() const {
    double s = 0.0;
    for (const cplx& c : values_) s = std::max(s, std::abs(c));
    return s;
  }

  bool is_real(double tol = kTolerance) const {
    return std::all_of(values_.begin(), values_.end(), [tol](const cplx& c) { return std::abs(c.imag()) <= tol; });
  }

 private:
  VilenkinBase base_;
  std::size_t level_;
  std::vector<cplx> values_;
};

namespace detail {

inline void require_same_base(const LevelFunction& f, const LevelFunction& g) {
  if (!(f.base() == g.base())) throw std::invalid_argument("functions live on different Vilenkin bases");
}

inline void require_positive_exponent(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::domain_error("exponent p must be a positive finite number, got " + std::to_string(p));
  }
}

template <class Op>
LevelFunction combine(const LevelFunction& f, const LevelFunction& g, Op op) {
  require_same_base(f, g);
  const std::size_t n = std::max(f.level(), g.level());
  LevelFunction a = f.refine(n);
  const LevelFunction b = g.refine(n);
  for (std::size_t r = 0; r < a.size(); ++r) a[r] = op(a[r], b[r]);
  return a;
}

}  // namespace detail

// -- integration and norms --------------------------------------------------

/// Haar integral: (1/M_N) sum of the values.
inline cplx integrate(const LevelFunction& f) {
  cplx s = 0.0;
  for (const cplx& v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

inline double lp_quasinorm(const LevelFunction& f, double p) {
  detail::require_positive_exponent(p);
  double s = 0.0;
  for (const cplx& v : f.values()) s += std::pow(std::abs(v), p);
  return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

/// sup_{lambda > 0} lambda^p mu(|f| > lambda), without an outer root.
///
/// |f| is a step function, so the supremum is the limit from below at one of
/// its values v, i.e. max_v v^p mu(|f| >= v).
inline double weak_lp(const LevelFunction& f, double p) {
  detail::require_positive_exponent(p);
  std::vector<double> a(f.size());
  std::transform(f.values().begin(), f.values().end(), a.begin(), [](const cplx& c) { return std::abs(c); });
  std::sort(a.begin(), a.end(), std::greater<>());
  const double inv = 1.0 / static_cast<double>(a.size());
  double best = 0.0;
  // a[i] has at least i + 1 values >= it; the last of a run of ties sees the full count.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] <= 0.0) break;
    best = std::max(best, std::pow(a[i], p) * static_cast<double>(i + 1) * inv);
  }
  return best;
}

/// sup_{lambda > 0} lambda mu(|f| > lambda)^{1/p} = weak_lp(f, p)^{1/p}.
inline double weak_lp_root(const LevelFunction& f, double p) { return std::pow(weak_lp(f, p), 1.0 / p); }

/// Average over each level-n cylinder, returned at level n.
inline LevelFunction conditional_expectation(const LevelFunction& f, std::size_t n) {
  if (n > f.level()) {
    throw std::out_of_range("conditional_expectation: level " + std::to_string(n) + " above function level " +
                            std::to_string(f.level()));
  }
  const std::uint64_t b = f.base().block(n, f.level());
  std::vector<cplx> v(f.base().order(n));
  for (std::size_t i = 0; i < v.size(); ++i) {
    cplx s = 0.0;
    for (std::uint64_t j = 0; j < b; ++j) s += f[i * b + j];
    v[i] = s / static_cast<double>(b);
  }
  return LevelFunction(f.base(), n, std::move(v));
}

// -- pointwise algebra --------------------------------------------------------

inline LevelFunction operator+(const LevelFunction& f, const LevelFunction& g) {
  return detail::combine(f, g, std::plus<>());
}

inline LevelFunction operator-(const LevelFunction& f, const LevelFunction& g) {
  return detail::combine(f, g, std::minus<>());
}

inline LevelFunction operator*(cplx c, const LevelFunction& f) {
  return f.map([c](const cplx& v) { return c * v; });
}

inline LevelFunction operator*(const LevelFunction& f, const LevelFunction& g) {
  return detail::combine(f, g, std::multiplies<>());
}

inline LevelFunction abs(const LevelFunction& f) {
  return f.map([](const cplx& v) { return cplx(std::abs(v), 0.0); });
}

/// Pointwise max of real parts.
inline LevelFunction pointwise_max(const LevelFunction& f, const LevelFunction& g) {
  return detail::combine(f, g, [](const cplx& a, const cplx& b) { return cplx(std::max(a.real(), b.real()), 0.0); });
}

/// Pointwise sup of moduli over a nonempty family.
inline LevelFunction sup_abs(std::span<const LevelFunction> family) {
  if (family.empty()) throw std::invalid_argument("sup_abs: empty family");
  LevelFunction s = abs(family.front());
  for (std::size_t i = 1; i < family.size(); ++i) s = pointwise_max(s, abs(family[i]));
  return s;
}

inline double max_abs_difference(const LevelFunction& f, const LevelFunction& g) {
  detail::require_same_base(f, g);
  const std::size_t n = std::max(f.level(), g.level());
  const LevelFunction a = f.refine(n);
  const LevelFunction b = g.refine(n);
  double d = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) d = std::max(d, std::abs(a[r] - b[r]));
  return d;
}

}  // namespace vilenkin
