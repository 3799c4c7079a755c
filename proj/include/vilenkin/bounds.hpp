#pragma once

// Empirical checks of the Fejer kernel integral bounds.
//
// Pair classes x in I_N(x_k e_k + x_l e_l), k < l < N:
//   int_{I_N} |K_n(x - t)| dmu(t)                       <~ M_l M_k / (n M_N)   (n >= M_N)
//   int_{I_N} sum_{j=M_N+1}^n |K_j(x - t)|/(j+1) dmu(t) <~ M_k M_l / M_N^2
// Single classes x in I_N(x_k e_k), k < N:
//   int_{I_N} |K_n(x - t)| dmu(t)                       <~ M_k / M_N
//   int_{I_N} sum_{j=M_N+1}^n |K_j(x - t)|/(j+1) dmu(t) <~ M_k l_n / M_N
//
// For t in I_N, x - t runs over the cylinder I_N(x), so each left side is a
// block integral of |K_n| over one level-N cylinder.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vilenkin/group.hpp"
#include "vilenkin/kernels.hpp"

namespace vilenkin {

struct CylinderClass {
  bool pair = false;
  std::size_t k = 0;
  std::size_t l = 0;  // meaningful for pairs only
  int digit_k = 0;
  int digit_l = 0;
  Cylinder cylinder;  // level-N cylinder of x
};

inline std::vector<CylinderClass> cylinder_classes(const VilenkinBase& base, std::size_t N) {
  if (N < 1 || N > base.depth()) throw std::out_of_range("cylinder_classes: N outside [1, K]");
  std::vector<CylinderClass> out;
  for (std::size_t k = 0; k + 1 < N; ++k)
    for (int xk = 1; xk < base.modulus(k); ++xk)
      for (std::size_t l = k + 1; l < N; ++l)
        for (int xl = 1; xl < base.modulus(l); ++xl) {
          GroupPoint a = base.zero();
          a.coords[k] = xk;
          a.coords[l] = xl;
          out.push_back({true, k, l, xk, xl, base.cylinder(a, N)});
        }
  for (std::size_t k = 0; k < N; ++k)
    for (int xk = 1; xk < base.modulus(k); ++xk) out.push_back({false, k, 0, xk, 0, base.cylinder(base.unit(k, xk), N)});
  return out;
}

struct ClassSweep {
  std::size_t N = 0;
  std::uint64_t n_first = 0;
  std::uint64_t n_last = 0;
  FejerConvention convention = FejerConvention::shifted;
  std::vector<CylinderClass> classes;
  // max over classes of LHS / RHS, indexed by n - n_first
  std::vector<double> integral_ratio;
  std::vector<double> series_ratio;
  // same maxima split by class kind, over the whole range
  double integral_pair = 0.0, integral_single = 0.0;
  double series_pair = 0.0, series_single = 0.0;

  double integral_constant() const { return max_over(integral_ratio, n_last); }
  double series_constant() const { return max_over(series_ratio, n_last); }
  /// Relative growth of the running max across the top octave (n_last/2, n_last].
  double integral_growth() const { return growth(integral_ratio); }
  double series_growth() const { return growth(series_ratio); }

 private:
  double max_over(const std::vector<double>& v, std::uint64_t upto) const {
    double m = 0.0;
    for (std::uint64_t n = n_first; n <= std::min(upto, n_last); ++n) m = std::max(m, v[n - n_first]);
    return m;
  }
  double growth(const std::vector<double>& v) const {
    const double lower = max_over(v, n_last / 2);
    return lower > 0.0 ? max_over(v, n_last) / lower - 1.0 : 0.0;
  }
};

/// Exhaustive sweep over every class at level N and every n in [n_first, n_last].
inline ClassSweep class_sweep(const VilenkinBase& base, std::size_t N, std::uint64_t n_first,
                                std::uint64_t n_last, FejerConvention conv = FejerConvention::shifted) {
  const std::size_t K = base.depth();
  if (N < 1 || N >= K) throw std::out_of_range("class_sweep: need 1 <= N < K");
  const double MN = static_cast<double>(base.order(N));
  if (n_first < base.order(N)) throw std::domain_error("class_sweep: bounds apply for n >= M_N");
  if (n_last < n_first || n_last > base.size()) throw std::out_of_range("class_sweep: bad n range");

  ClassSweep out;
  out.N = N;
  out.n_first = n_first;
  out.n_last = n_last;
  out.convention = conv;
  out.classes = cylinder_classes(base, N);
  out.integral_ratio.assign(n_last - n_first + 1, 0.0);
  out.series_ratio.assign(n_last - n_first + 1, 0.0);

  const std::uint64_t blk = base.block(N, K);
  const double cell = 1.0 / static_cast<double>(base.size());
  std::vector<double> series(out.classes.size(), 0.0);
  std::vector<double> block_integral(out.classes.size());

  auto s = SummationStream::dirichlet(base, K);
  for (std::uint64_t n = 1; n <= n_last; ++n) {
    s.advance();
    for (std::size_t c = 0; c < out.classes.size(); ++c) {
      const std::uint64_t lo = out.classes[c].cylinder.rank * blk;
      double acc = 0.0;
      for (std::uint64_t r = lo; r < lo + blk; ++r) acc += std::abs(s.fejer_at(r, conv));
      block_integral[c] = acc * cell;
      if (static_cast<double>(n) >= MN + 1.0) series[c] += block_integral[c] / static_cast<double>(n + 1);
    }
    if (n < n_first) continue;
    double ri = 0.0, rs = 0.0;
    for (std::size_t c = 0; c < out.classes.size(); ++c) {
      const CylinderClass& cl = out.classes[c];
      const double Mk = static_cast<double>(base.order(cl.k));
      double rhs_integral, rhs_series;
      if (cl.pair) {
        const double Ml = static_cast<double>(base.order(cl.l));
        rhs_integral = Ml * Mk / (static_cast<double>(n) * MN);
        rhs_series = Mk * Ml / (MN * MN);
      } else {
        rhs_integral = Mk / MN;
        rhs_series = Mk * s.harmonic() / MN;
      }
      const double a = block_integral[c] / rhs_integral;
      const double b = series[c] / rhs_series;
      ri = std::max(ri, a);
      rs = std::max(rs, b);
      if (cl.pair) {
        out.integral_pair = std::max(out.integral_pair, a);
        out.series_pair = std::max(out.series_pair, b);
      } else {
        out.integral_single = std::max(out.integral_single, a);
        out.series_single = std::max(out.series_single, b);
      }
    }
    out.integral_ratio[n - n_first] = ri;
    out.series_ratio[n - n_first] = rs;
  }
  return out;
}

/// integral |K_n| dmu for n = 1..n_max (entry n - 1) and its running maximum.
struct FejerIntegrability {
  std::vector<double> l1;
  std::vector<double> running_max;

  /// Relative growth of the running max between n_lo and n_hi.
  double growth(std::uint64_t n_lo, std::uint64_t n_hi) const {
    return running_max.at(n_hi - 1) / running_max.at(n_lo - 1) - 1.0;
  }
};

inline FejerIntegrability fejer_l1_sweep(const VilenkinBase& base, std::size_t level, std::uint64_t n_max,
                                         FejerConvention conv = FejerConvention::shifted) {
  detail::require_resolvable(base, n_max, level, "fejer_l1_sweep");
  FejerIntegrability out;
  auto s = SummationStream::dirichlet(base, level);
  double best = 0.0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    s.advance();
    double acc = 0.0;
    for (std::size_t r = 0; r < s.size(); ++r) acc += std::abs(s.fejer_at(r, conv));
    acc /= static_cast<double>(s.size());
    best = std::max(best, acc);
    out.l1.push_back(acc);
    out.running_max.push_back(best);
  }
  return out;
}

}  // namespace vilenkin
