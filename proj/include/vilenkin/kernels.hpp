#pragma once

// Dirichlet, Fejer and Riesz logarithmic kernels and means.
//
//   D_n = sum_{k<n} psi_k                 S_n f = sum_{k<n} fhat(k) psi_k
//   K_n = (1/n) sum D_k                   sigma_n f = (1/n) sum S_k f
//   L_n = (1/l_n) sum_{k=1}^n D_k / k     R_n f = (1/l_n) sum_{k=1}^n S_k f / k
//
// The Fejer average comes in two index conventions.  `unshifted` sums
// k = 0..n-1 and `shifted` sums k = 1..n.  Gat's closed form for K_{2^A}
// and the Abel identities linking Riesz and Fejer means hold exactly only
// for `shifted`, which is therefore the default.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vilenkin/group.hpp"
#include "vilenkin/level_function.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

enum class FejerConvention { unshifted, shifted };

inline const char* to_string(FejerConvention c) { return c == FejerConvention::unshifted ? "unshifted" : "shifted"; }

/// l_n = sum_{k=1}^n 1/k, with l_0 = 0.
class HarmonicSums {
 public:
  explicit HarmonicSums(std::uint64_t n_max) : l_(n_max + 1, 0.0) {
    for (std::uint64_t k = 1; k <= n_max; ++k) l_[k] = l_[k - 1] + 1.0 / static_cast<double>(k);
  }
  double operator()(std::uint64_t n) const { return l_.at(n); }
  std::uint64_t max_index() const noexcept { return l_.size() - 1; }

 private:
  std::vector<double> l_;
};

inline double harmonic_number(std::uint64_t n) {
  double s = 0.0;
  for (std::uint64_t k = 1; k <= n; ++k) s += 1.0 / static_cast<double>(k);
  return s;
}

/// Streams X_0 = 0, X_{n+1} = X_n + c_n psi_n together with the Fejer and
/// Riesz averages of the X's.  With c = 1 the X's are the Dirichlet kernels,
/// with c = fhat they are the partial sums S_n f.
class SummationStream {
 public:
  SummationStream(const VilenkinBase& base, std::size_t level, std::vector<cplx> coeffs)
      : base_(base), level_(level), chars_(base, level), coeffs_(std::move(coeffs)) {
    const std::uint64_t m = base.order(level);
    if (coeffs_.size() != m) throw std::invalid_argument("SummationStream: coefficient table size mismatch");
    current_.assign(m, 0.0);
    cesaro_.assign(m, 0.0);
    riesz_.assign(m, 0.0);
  }

  static SummationStream dirichlet(const VilenkinBase& base, std::size_t level) {
    return SummationStream(base, level, std::vector<cplx>(base.order(level), 1.0));
  }

  static SummationStream partial_sums(const LevelFunction& f) {
    Spectrum s = forward(f);
    return SummationStream(f.base(), f.level(), std::move(s.coeffs));
  }

  const VilenkinBase& base() const noexcept { return base_; }
  std::size_t level() const noexcept { return level_; }
  std::size_t size() const noexcept { return current_.size(); }

  /// Index n of the term currently held (X_n).
  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t n_max() const noexcept { return base_.order(level_); }

  /// l_n for the current n.
  double harmonic() const noexcept { return harmonic_; }

  void advance() {
    if (n_ >= n_max()) throw std::out_of_range("SummationStream: index would exceed M_N");
    const cplx c = coeffs_[n_];
    if (c != cplx(0.0)) chars_.add_scaled(c, current_);
    ++n_;
    if (!chars_.done()) chars_.advance();
    const double inv = 1.0 / static_cast<double>(n_);
    harmonic_ += inv;
    for (std::size_t r = 0; r < current_.size(); ++r) {
      cesaro_[r] += current_[r];
      riesz_[r] += current_[r] * inv;
    }
  }

  void advance_to(std::uint64_t n) {
    if (n < n_) throw std::invalid_argument("SummationStream: cannot go backwards");
    while (n_ < n) advance();
  }

  /// X_n
  std::span<const cplx> current() const noexcept { return current_; }
  /// sum_{k=1}^n X_k
  std::span<const cplx> cesaro_sum() const noexcept { return cesaro_; }

  cplx fejer_at(std::size_t r, FejerConvention conv = FejerConvention::shifted) const {
    const double inv = 1.0 / static_cast<double>(n_);
    return conv == FejerConvention::shifted ? cesaro_[r] * inv : (cesaro_[r] - current_[r]) * inv;
  }

  cplx riesz_at(std::size_t r) const { return riesz_[r] / harmonic_; }

  LevelFunction partial() const { return LevelFunction(base_, level_, current_); }

  LevelFunction fejer(FejerConvention conv = FejerConvention::shifted) const {
    require_started("fejer");
    std::vector<cplx> v(size());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = fejer_at(r, conv);
    return LevelFunction(base_, level_, std::move(v));
  }

  LevelFunction riesz() const {
    require_started("riesz");
    std::vector<cplx> v(size());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = riesz_at(r);
    return LevelFunction(base_, level_, std::move(v));
  }

 private:
  void require_started(const char* what) const {
    if (n_ == 0) throw std::domain_error(std::string(what) + ": index must be at least 1");
  }

  VilenkinBase base_;
  std::size_t level_;
  CharacterStream chars_;
  std::vector<cplx> coeffs_;
  std::uint64_t n_ = 0;
  double harmonic_ = 0.0;
  std::vector<cplx> current_;
  std::vector<cplx> cesaro_;
  std::vector<cplx> riesz_;
};

namespace detail {

inline void require_resolvable(const VilenkinBase& base, std::uint64_t n, std::size_t level, const char* what) {
  if (level > base.depth()) throw std::out_of_range(std::string(what) + ": level exceeds depth");
  if (n > base.order(level)) {
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(n) + " not resolvable at level " +
                            std::to_string(level) + " (M = " + std::to_string(base.order(level)) + ")");
  }
}

inline void require_positive_index(std::uint64_t n, const char* what) {
  if (n == 0) throw std::domain_error(std::string(what) + ": index must be at least 1");
}

}  // namespace detail

// -- kernels ----------------------------------------------------------------

/// D_n at level N, via the inverse transform of the indicator of [0, n).
inline LevelFunction dirichlet(const VilenkinBase& base, std::uint64_t n, std::size_t level) {
  detail::require_resolvable(base, n, level, "dirichlet");
  Spectrum s{base, level, std::vector<cplx>(base.order(level), 0.0)};
  for (std::uint64_t k = 0; k < n; ++k) s.coeffs[k] = 1.0;
  return inverse(s);
}

inline LevelFunction fejer_kernel(const VilenkinBase& base, std::uint64_t n, std::size_t level,
                                  FejerConvention conv = FejerConvention::shifted) {
  detail::require_positive_index(n, "fejer_kernel");
  detail::require_resolvable(base, n, level, "fejer_kernel");
  auto s = SummationStream::dirichlet(base, level);
  s.advance_to(n);
  return s.fejer(conv);
}

/// L_n by direct summation of D_k / k.
inline LevelFunction riesz_kernel(const VilenkinBase& base, std::uint64_t n, std::size_t level) {
  detail::require_positive_index(n, "riesz_kernel");
  detail::require_resolvable(base, n, level, "riesz_kernel");
  auto s = SummationStream::dirichlet(base, level);
  s.advance_to(n);
  return s.riesz();
}

/// L_n through the Abel transform:
///   (1/l_n) [ sum_{j=1}^{n-1} K_j / (j + 1) + K_n ].
inline LevelFunction riesz_kernel_abel(const VilenkinBase& base, std::uint64_t n, std::size_t level,
                                       FejerConvention conv = FejerConvention::shifted) {
  detail::require_positive_index(n, "riesz_kernel_abel");
  detail::require_resolvable(base, n, level, "riesz_kernel_abel");
  auto s = SummationStream::dirichlet(base, level);
  std::vector<cplx> acc(s.size(), 0.0);
  for (std::uint64_t j = 1; j < n; ++j) {
    s.advance();
    const double w = 1.0 / static_cast<double>(j + 1);
    for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += s.fejer_at(r, conv) * w;
  }
  s.advance();
  const double l = s.harmonic();
  for (std::size_t r = 0; r < acc.size(); ++r) acc[r] = (acc[r] + s.fejer_at(r, conv)) / l;
  return LevelFunction(base, level, std::move(acc));
}

/// Gat's closed form for the dyadic Fejer kernel K_{2^A} (shifted convention):
/// 2^{t-1} on I_A(e_t), (2^A + 1)/2 on I_A, 0 elsewhere, where x lies in
/// I_t \ I_{t+1}.
inline double gat_closed_form(const VilenkinBase& base, std::size_t A, const GroupPoint& x) {
  if (!base.is_dyadic()) throw std::invalid_argument("gat_closed_form: requires a dyadic base");
  if (A > base.depth()) throw std::out_of_range("gat_closed_form: A exceeds depth");
  if (!base.contains(x)) throw std::invalid_argument("gat_closed_form: point not in group");
  std::size_t t = 0;
  while (t < A && x.coords[t] == 0) ++t;
  if (t == A) return (std::ldexp(1.0, static_cast<int>(A)) + 1.0) / 2.0;
  for (std::size_t j = t + 1; j < A; ++j)
    if (x.coords[j] != 0) return 0.0;
  return std::ldexp(1.0, static_cast<int>(t) - 1);
}

/// (f * g)(x) = integral f(t) g(x - t) dmu(t), evaluated on the group.
inline LevelFunction convolve(const LevelFunction& f, const LevelFunction& g) {
  detail::require_same_base(f, g);
  const std::size_t level = std::max(f.level(), g.level());
  const LevelFunction a = f.refine(level);
  const LevelFunction b = g.refine(level);
  const VilenkinBase& base = a.base();
  const std::uint64_t size = base.order(level);
  std::vector<std::vector<int>> digits(size);
  for (std::uint64_t r = 0; r < size; ++r) digits[r] = base.point_of(r, level).coords;
  std::vector<cplx> out(size, 0.0);
  for (std::uint64_t x = 0; x < size; ++x) {
    cplx acc = 0.0;
    for (std::uint64_t t = 0; t < size; ++t) {
      std::uint64_t diff = 0;
      for (std::size_t k = 0; k < level; ++k) {
        const int m = base.modulus(k);
        diff = diff * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>((digits[x][k] - digits[t][k] + m) % m);
      }
      acc += a[t] * b[diff];
    }
    out[x] = acc / static_cast<double>(size);
  }
  return LevelFunction(base, level, std::move(out));
}

// -- partial sums and means -------------------------------------------------

/// S_n f through the transform: truncate the spectrum at n and invert.
inline LevelFunction partial_sum(const LevelFunction& f, std::uint64_t n) {
  detail::require_resolvable(f.base(), n, f.level(), "partial_sum");
  Spectrum s = forward(f);
  for (std::uint64_t k = n; k < s.coeffs.size(); ++k) s.coeffs[k] = 0.0;
  return inverse(s);
}

/// S_0 f, ..., S_{M_N} f by cumulative summation; O(M_N^2).
inline std::vector<LevelFunction> all_partial_sums(const LevelFunction& f) {
  auto s = SummationStream::partial_sums(f);
  std::vector<LevelFunction> out;
  out.reserve(s.n_max() + 1);
  out.push_back(s.partial());
  while (s.n() < s.n_max()) {
    s.advance();
    out.push_back(s.partial());
  }
  return out;
}

inline LevelFunction fejer_mean(const LevelFunction& f, std::uint64_t n,
                                FejerConvention conv = FejerConvention::shifted) {
  detail::require_positive_index(n, "fejer_mean");
  detail::require_resolvable(f.base(), n, f.level(), "fejer_mean");
  auto s = SummationStream::partial_sums(f);
  s.advance_to(n);
  return s.fejer(conv);
}

inline LevelFunction riesz_mean(const LevelFunction& f, std::uint64_t n) {
  detail::require_positive_index(n, "riesz_mean");
  detail::require_resolvable(f.base(), n, f.level(), "riesz_mean");
  auto s = SummationStream::partial_sums(f);
  s.advance_to(n);
  return s.riesz();
}

/// R_n f through the Abel transform of the Fejer means:
///   (1/l_n) [ sum_{j=1}^{n-1} sigma_j f / (j + 1) + sigma_n f ].
inline LevelFunction riesz_mean_abel(const LevelFunction& f, std::uint64_t n,
                                     FejerConvention conv = FejerConvention::shifted) {
  detail::require_positive_index(n, "riesz_mean_abel");
  detail::require_resolvable(f.base(), n, f.level(), "riesz_mean_abel");
  auto s = SummationStream::partial_sums(f);
  std::vector<cplx> acc(s.size(), 0.0);
  for (std::uint64_t j = 1; j < n; ++j) {
    s.advance();
    const double w = 1.0 / static_cast<double>(j + 1);
    for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += s.fejer_at(r, conv) * w;
  }
  s.advance();
  const double l = s.harmonic();
  for (std::size_t r = 0; r < acc.size(); ++r) acc[r] = (acc[r] + s.fejer_at(r, conv)) / l;
  return LevelFunction(f.base(), f.level(), std::move(acc));
}

/// R_n f for every n in `ns` (any order) in a single pass.
inline std::vector<LevelFunction> riesz_means_at(const LevelFunction& f, std::span<const std::uint64_t> ns) {
  std::vector<std::pair<std::uint64_t, std::size_t>> order;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    detail::require_positive_index(ns[i], "riesz_means_at");
    detail::require_resolvable(f.base(), ns[i], f.level(), "riesz_means_at");
    order.emplace_back(ns[i], i);
  }
  std::sort(order.begin(), order.end());
  std::vector<LevelFunction> out(ns.size(), LevelFunction::zero(f.base(), f.level()));
  auto s = SummationStream::partial_sums(f);
  for (auto [n, i] : order) {
    s.advance_to(n);
    out[i] = s.riesz();
  }
  return out;
}

/// Largest pointwise residual of the two Abel identities for n = 1..n_max:
/// riesz kernel vs its Fejer form, and R_n f vs its sigma form.
struct AbelResiduals {
  double kernel = 0.0;
  double mean = 0.0;
};

inline AbelResiduals abel_identity_residuals(const LevelFunction& f, std::uint64_t n_max,
                                             FejerConvention conv = FejerConvention::shifted) {
  detail::require_resolvable(f.base(), n_max, f.level(), "abel_identity_residuals");
  AbelResiduals res;
  auto ker = SummationStream::dirichlet(f.base(), f.level());
  auto sum = SummationStream::partial_sums(f);
  std::vector<cplx> acc_k(ker.size(), 0.0), acc_m(sum.size(), 0.0);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    ker.advance();
    sum.advance();
    const double l = ker.harmonic();
    for (std::size_t r = 0; r < acc_k.size(); ++r) {
      const cplx abel_k = (acc_k[r] + ker.fejer_at(r, conv)) / l;
      const cplx abel_m = (acc_m[r] + sum.fejer_at(r, conv)) / l;
      res.kernel = std::max(res.kernel, std::abs(abel_k - ker.riesz_at(r)));
      res.mean = std::max(res.mean, std::abs(abel_m - sum.riesz_at(r)));
    }
    const double w = 1.0 / static_cast<double>(n + 1);
    for (std::size_t r = 0; r < acc_k.size(); ++r) {
      acc_k[r] += ker.fejer_at(r, conv) * w;
      acc_m[r] += sum.fejer_at(r, conv) * w;
    }
  }
  return res;
}

}  // namespace vilenkin
