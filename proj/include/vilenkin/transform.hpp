#pragma once

// Vilenkin characters and the fast mixed-radix Vilenkin-Fourier transform.
//
//   r_k(x)   = exp(2 pi i x_k / m_k)
//   psi_n(x) = prod_k r_k(x)^{n_k}         (n = sum n_k M_k)
//   fhat(n)  = integral of f * conj(psi_n)
//
// A level-N function table is an N-dimensional array with axis k of length
// m_k, axis 0 slowest.  The transform is a tensor product of size-m_k DFTs,
// one stage per axis; the output is then re-indexed from the layout
// (digit u_k at stride M_N / M_{k+1}) to n = sum u_k M_k.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vilenkin/group.hpp"
#include "vilenkin/level_function.hpp"

namespace vilenkin {

namespace detail {

/// exp(2 pi i t / m), exact at the quarter turns.
inline cplx unit_root(std::uint64_t t, std::uint64_t m) {
  t %= m;
  if (t == 0) return {1.0, 0.0};
  if (2 * t == m) return {-1.0, 0.0};
  if (4 * t == m) return {0.0, 1.0};
  if (4 * t == 3 * m) return {0.0, -1.0};
  const double a = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(m);
  return {std::cos(a), std::sin(a)};
}

inline std::vector<cplx> root_table(std::uint64_t m) {
  std::vector<cplx> w(m);
  for (std::uint64_t t = 0; t < m; ++t) w[t] = unit_root(t, m);
  return w;
}

/// Layout position of the coefficient index n at level N.
inline std::vector<std::uint64_t> spectral_positions(const VilenkinBase& base, std::size_t level) {
  const std::uint64_t size = base.order(level);
  std::vector<std::uint64_t> pos(size);
  std::vector<int> digit(level, 0);
  std::uint64_t p = 0;
  for (std::uint64_t n = 0; n < size; ++n) {
    pos[n] = p;
    // increment the mixed-radix counter, least significant digit first
    for (std::size_t k = 0; k < level; ++k) {
      const std::uint64_t stride = base.block(k + 1, level);
      if (digit[k] + 1 < base.modulus(k)) {
        ++digit[k];
        p += stride;
        break;
      }
      p -= static_cast<std::uint64_t>(digit[k]) * stride;
      digit[k] = 0;
    }
  }
  return pos;
}

/// One stage per axis; sign -1 for analysis, +1 for synthesis.
inline void tensor_dft(const VilenkinBase& base, std::size_t level, std::vector<cplx>& data, int sign) {
  std::vector<cplx> out(data.size());
  std::vector<cplx> row;
  for (std::size_t k = 0; k < level; ++k) {
    const auto m = static_cast<std::uint64_t>(base.modulus(k));
    const std::uint64_t stride = base.block(k + 1, level);
    const std::uint64_t span = m * stride;
    const std::vector<cplx> w = root_table(m);
    row.resize(m);
    for (std::uint64_t b = 0; b < data.size(); b += span) {
      for (std::uint64_t i = 0; i < stride; ++i) {
        for (std::uint64_t t = 0; t < m; ++t) row[t] = data[b + t * stride + i];
        for (std::uint64_t u = 0; u < m; ++u) {
          cplx acc = 0.0;
          for (std::uint64_t t = 0; t < m; ++t) {
            const std::uint64_t e = (u * t) % m;
            acc += row[t] * w[sign < 0 ? (m - e) % m : e];
          }
          out[b + u * stride + i] = acc;
        }
      }
    }
    data.swap(out);
  }
}

inline std::uint64_t lcm_of_moduli(const VilenkinBase& base, std::size_t level) {
  std::uint64_t l = 1;
  for (std::size_t k = 0; k < level; ++k) l = std::lcm(l, static_cast<std::uint64_t>(base.modulus(k)));
  return l;
}

}  // namespace detail

struct Spectrum {
  VilenkinBase base;
  std::size_t level;
  std::vector<cplx> coeffs;  // fhat(0 .. M_N - 1)
};

inline cplx rademacher(const VilenkinBase& base, std::size_t k, const GroupPoint& x) {
  if (k >= base.depth()) throw std::out_of_range("rademacher: index " + std::to_string(k) + " out of range");
  if (!base.contains(x)) throw std::invalid_argument("rademacher: point not in group");
  return detail::unit_root(static_cast<std::uint64_t>(x.coords[k]), static_cast<std::uint64_t>(base.modulus(k)));
}

inline cplx character(const VilenkinBase& base, std::uint64_t n, const GroupPoint& x) {
  const NatExpansion e = base.expand(n);  // throws for n >= M_K
  if (!base.contains(x)) throw std::invalid_argument("character: point not in group");
  const std::uint64_t L = detail::lcm_of_moduli(base, base.depth());
  std::uint64_t phase = 0;
  for (std::size_t k = 0; k < base.depth(); ++k) {
    const auto m = static_cast<std::uint64_t>(base.modulus(k));
    phase = (phase + (static_cast<std::uint64_t>(e.digits[k]) * x.coords[k] % m) * (L / m)) % L;
  }
  return detail::unit_root(phase, L);
}

/// psi_n sampled on the level-N cylinders.
inline LevelFunction character_function(const VilenkinBase& base, std::uint64_t n, std::size_t level) {
  if (n >= base.order(level)) {
    throw std::out_of_range("character " + std::to_string(n) + " not resolvable at level " + std::to_string(level));
  }
  std::vector<cplx> v(base.order(level));
  for (std::uint64_t r = 0; r < v.size(); ++r) v[r] = character(base, n, base.point_of(r, level));
  return LevelFunction(base, level, std::move(v));
}

inline Spectrum forward(const LevelFunction& f) {
  const VilenkinBase& base = f.base();
  const std::size_t level = f.level();
  std::vector<cplx> data(f.values().begin(), f.values().end());
  detail::tensor_dft(base, level, data, -1);
  const auto pos = detail::spectral_positions(base, level);
  const double inv = 1.0 / static_cast<double>(data.size());
  Spectrum s{base, level, std::vector<cplx>(data.size())};
  for (std::uint64_t n = 0; n < data.size(); ++n) s.coeffs[n] = data[pos[n]] * inv;
  return s;
}

inline LevelFunction inverse(const Spectrum& s) {
  if (s.coeffs.size() != s.base.order(s.level)) throw std::invalid_argument("inverse: spectrum size mismatch");
  const auto pos = detail::spectral_positions(s.base, s.level);
  std::vector<cplx> data(s.coeffs.size());
  for (std::uint64_t n = 0; n < data.size(); ++n) data[pos[n]] = s.coeffs[n];
  detail::tensor_dft(s.base, s.level, data, +1);
  return LevelFunction(s.base, s.level, std::move(data));
}

/// Walks psi_0, psi_1, ..., psi_{M_N - 1} at level N in O(M_N) per step.
///
/// Phases are kept as integers modulo L = lcm(m_0, ..., m_{N-1}).  Going from
/// n to n + 1 with a carry through digits 0..c-1 multiplies by
/// r_0 r_1 ... r_c, because r_j^{-(m_j - 1)} = r_j.
class CharacterStream {
 public:
  CharacterStream(const VilenkinBase& base, std::size_t level)
      : base_(base), level_(level), size_(base.order(level)), digits_(level, 0) {
    L_ = detail::lcm_of_moduli(base, level);
    roots_ = detail::root_table(L_);
    phase_.assign(size_, 0);
    step_.assign(level * size_, 0);
    for (std::uint64_t r = 0; r < size_; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < level; ++c) {
        const auto m = static_cast<std::uint64_t>(base.modulus(c));
        acc = (acc + static_cast<std::uint64_t>(base.digit_of_rank(r, level, c)) * (L_ / m)) % L_;
        step_[c * size_ + r] = static_cast<std::uint32_t>(acc);
      }
    }
  }

  std::uint64_t index() const noexcept { return index_; }
  bool done() const noexcept { return index_ >= size_; }
  std::size_t size() const noexcept { return size_; }

  void advance() {
    if (done()) throw std::out_of_range("CharacterStream: no character beyond M_N - 1");
    ++index_;
    if (done()) return;
    std::size_t c = 0;
    while (digits_[c] + 1 == base_.modulus(c)) digits_[c++] = 0;
    ++digits_[c];
    const std::uint32_t* step = step_.data() + c * size_;
    const auto L = static_cast<std::uint32_t>(L_);
    for (std::uint64_t r = 0; r < size_; ++r) {
      std::uint32_t p = phase_[r] + step[r];
      phase_[r] = p >= L ? p - L : p;
    }
  }

  cplx operator[](std::size_t rank) const { return roots_[phase_[rank]]; }

  /// out += c * psi_index
  void add_scaled(cplx c, std::span<cplx> out) const {
    for (std::uint64_t r = 0; r < size_; ++r) out[r] += c * roots_[phase_[r]];
  }

  LevelFunction materialize() const {
    std::vector<cplx> v(size_);
    for (std::uint64_t r = 0; r < size_; ++r) v[r] = roots_[phase_[r]];
    return LevelFunction(base_, level_, std::move(v));
  }

 private:
  VilenkinBase base_;
  std::size_t level_;
  std::uint64_t size_;
  std::uint64_t L_ = 1;
  std::uint64_t index_ = 0;
  std::vector<int> digits_;
  std::vector<cplx> roots_;
  std::vector<std::uint32_t> phase_;
  std::vector<std::uint32_t> step_;  // step_[c * size + r]: phase of r_0 ... r_c at rank r
};

}  // namespace vilenkin
