#pragma once

// The extremal martingales f_k = D_{M_{2k+1}} - D_{M_{2k}} and the blow-up of
// weighted Riesz maximal ratios along them.
//
// Stage k uses n_k = k and the index table q^s = M_{2k} + M_{2s},
// s = 0..k-1.  The operator whose norm is measured is
//   T f = max_s |R_{q^s} f| / phi(q^s).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "vilenkin/group.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/level_function.hpp"
#include "vilenkin/martingale.hpp"
#include "vilenkin/maximal.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

struct CounterexampleInstance {
  VilenkinBase base;
  std::size_t k = 0;
  std::size_t level = 0;  // 2k + 1
  LevelFunction f;
  std::vector<std::uint64_t> q;  // q[s] = M_{2k} + M_{2s}
  double spectrum_residual = 0.0;

  std::uint64_t m_low() const { return base.order(2 * k); }
  std::uint64_t m_high() const { return base.order(2 * k + 1); }
};

inline CounterexampleInstance build_instance(const VilenkinBase& base, std::size_t k) {
  if (k < 1) throw std::domain_error("build_instance: stage k must be at least 1");
  if (2 * k + 1 > base.depth()) {
    throw std::out_of_range("build_instance: stage " + std::to_string(k) + " needs depth " + std::to_string(2 * k + 1) +
                            ", base has " + std::to_string(base.depth()));
  }
  const std::size_t level = 2 * k + 1;
  const std::uint64_t lo = base.order(2 * k), hi = base.order(level);
  LevelFunction f = dirichlet(base, hi, level) - dirichlet(base, lo, level);

  const Spectrum s = forward(f);
  double res = 0.0;
  for (std::uint64_t i = 0; i < s.coeffs.size(); ++i) {
    const double want = (i >= lo && i < hi) ? 1.0 : 0.0;
    res = std::max(res, std::abs(s.coeffs[i] - want));
  }
  if (res > 1e-9) throw std::logic_error("build_instance: spectrum is not the expected indicator");

  std::vector<std::uint64_t> q;
  for (std::size_t j = 0; j < k; ++j) q.push_back(lo + base.order(2 * j));
  return {base, k, level, std::move(f), std::move(q), res};
}

struct ClosedFormCheck {
  LevelFunction closed_form;
  double residual = 0.0;  // max |closed form - S_i f|
};

/// S_i f by cases: 0 for i <= M_{2k}, D_i - D_{M_{2k}} inside, f for i >= M_{2k+1}.
inline ClosedFormCheck partial_sum_closed_form(const CounterexampleInstance& inst, std::uint64_t i) {
  const VilenkinBase& base = inst.base;
  if (i > base.size()) throw std::out_of_range("partial_sum_closed_form: i exceeds M_K");
  const std::uint64_t lo = inst.m_low(), hi = inst.m_high();
  std::size_t level = inst.level;
  while (base.order(level) < i) ++level;

  LevelFunction closed = LevelFunction::zero(base, level);
  if (i >= hi) closed = inst.f.refine(level);
  else if (i > lo) closed = dirichlet(base, i, level) - dirichlet(base, lo, level);

  const LevelFunction direct = partial_sum(inst.f.refine(level), i);
  return {closed, max_abs_difference(closed, direct)};
}

/// max |D_{j+M} - D_M - psi_M D_j| with M = M_{2k}, over all ranks.
inline double shift_identity_check(const CounterexampleInstance& inst, std::uint64_t j) {
  const std::uint64_t M = inst.m_low();
  if (j < 1 || j >= M) {
    throw std::out_of_range("shift_identity_check: j = " + std::to_string(j) + " outside [1, " +
                            std::to_string(M - 1) + "]");
  }
  const VilenkinBase& base = inst.base;
  const std::size_t L = inst.level;
  const LevelFunction lhs = dirichlet(base, j + M, L) - dirichlet(base, M, L);
  const LevelFunction rhs = character_function(base, M, L) * dirichlet(base, j, L);
  return max_abs_difference(lhs, rhs);
}

/// The shift identity for every j in [1, M_{2k} - 1] in one streaming pass.
inline double shift_identity_sweep(const CounterexampleInstance& inst) {
  const std::uint64_t M = inst.m_low();
  const std::size_t L = inst.level;
  auto low = SummationStream::dirichlet(inst.base, L);
  auto high = SummationStream::dirichlet(inst.base, L);
  high.advance_to(M);
  const std::vector<cplx> dm(high.current().begin(), high.current().end());
  const LevelFunction psi = character_function(inst.base, M, L);
  double res = 0.0;
  for (std::uint64_t j = 1; j < M; ++j) {
    low.advance();
    high.advance();
    for (std::size_t r = 0; r < dm.size(); ++r) {
      res = std::max(res, std::abs(high.current()[r] - dm[r] - psi[r] * low.current()[r]));
    }
  }
  return res;
}

struct QEvaluation {
  std::size_t s = 0;
  std::uint64_t q = 0;
  LevelFunction value;              // |R_q f| / phi(q)
  double modulus_residual = 0.0;       // max |value - sum form| on I_{2s}
  double modulus_global_gap = 0.0;     // same over the whole group, informational
  bool modulus_inequality = true;      // value <= sum form everywhere
  double lower_bound = 0.0;         // M_{2s}^2 / (phi(q) l_q M_{2k})
  double min_ratio = 0.0;           // min of value / lower_bound on I_{2s} \ I_{2s+1}
};

inline QEvaluation riesz_at_q(const CounterexampleInstance& inst, std::size_t s, const WeightSpec& w,
                              const LevelFunction* riesz = nullptr) {
  if (s >= inst.k) throw std::out_of_range("riesz_at_q: s must be below k");
  const VilenkinBase& base = inst.base;
  const std::size_t L = inst.level;
  const std::uint64_t q = inst.q[s];
  const std::uint64_t Ms = base.order(2 * s);
  const double Mlow = static_cast<double>(inst.m_low());
  const double phi = w(q);
  const double lq = harmonic_number(q);

  QEvaluation out{s, q, riesz ? abs(*riesz) : abs(riesz_mean(inst.f, q)), 0.0, 0.0, true, 0.0, 0.0};
  out.value = (1.0 / phi) * out.value;

  // sum_{j=1}^{M_{2s}} |D_j| / (j + M_{2k}) / (phi(q) l_q)
  std::vector<double> rhs(out.value.size(), 0.0);
  auto d = SummationStream::dirichlet(base, L);
  for (std::uint64_t j = 1; j <= Ms; ++j) {
    d.advance();
    const double wj = 1.0 / (static_cast<double>(j) + Mlow);
    for (std::size_t r = 0; r < rhs.size(); ++r) rhs[r] += std::abs(d.current()[r]) * wj;
  }
  for (double& v : rhs) v /= phi * lq;

  const double Ms_d = static_cast<double>(Ms);
  out.lower_bound = Ms_d * Ms_d / (phi * lq * Mlow);
  out.min_ratio = std::numeric_limits<double>::infinity();
  const std::uint64_t in_s = base.block(2 * s, L);        // ranks of I_{2s} are [0, in_s)
  const std::uint64_t in_s1 = base.block(2 * s + 1, L);   // ranks of I_{2s+1} are [0, in_s1)
  const double scale = std::max(1.0, out.value.sup_norm());
  for (std::size_t r = 0; r < rhs.size(); ++r) {
    const double v = out.value[r].real();
    const double gap = std::abs(v - rhs[r]);
    out.modulus_global_gap = std::max(out.modulus_global_gap, gap);
    if (v > rhs[r] + 1e-12 * scale) out.modulus_inequality = false;
    if (r < in_s) {
      out.modulus_residual = std::max(out.modulus_residual, gap);
      if (r >= in_s1) out.min_ratio = std::min(out.min_ratio, v / out.lower_bound);
    }
  }
  return out;
}

struct BlowupRow {
  std::size_t k = 0;
  std::vector<std::uint64_t> q;
  double hardy = 0.0;      // ||f_k||_{H_p}
  double numerator = 0.0;  // ||T f_k||_p, or lambda mu{T f_k >= lambda}^{1/p} when p < 1/2
  double ratio = 0.0;
  double analytic = 0.0;   // constant-free lower bound from the blow-up estimate
  double hardy_scaled = 0.0;  // ||f_k||_{H_p} / M_{2k}^{1 - 1/p}
  double lambda = 0.0;     // weak-type threshold, p < 1/2 only
};

struct BlowupTable {
  std::string weight;
  double p = 0.5;
  bool weak_mode = false;
  std::vector<BlowupRow> rows;
  bool strictly_increasing = false;
  Trend trend = Trend::flat;
};

/// One row of the blow-up table.
///
/// p >= 1/2: numerator ||T f||_p, analytic k / phi(M_{2k+1}) (p = 1/2 only,
/// NaN otherwise).
/// p < 1/2: at lambda = 1 / (phi(q0) l_{q0} q0), q0 = M_{2k} + 1, the
/// numerator is lambda mu{T f >= lambda}^{1/p}, analytic
/// q0^{1/p-2} / (phi(q0) log q0).
inline BlowupRow blowup_row(const VilenkinBase& base, const WeightSpec& w, double p, std::size_t k) {
  detail::require_positive_exponent(p);
  const CounterexampleInstance inst = build_instance(base, k);
  w.validate(inst.q.back());
  BlowupRow row;
  row.k = k;
  row.q = inst.q;
  row.hardy = hardy_quasinorm(inst.f, p);
  row.hardy_scaled = row.hardy / std::pow(static_cast<double>(inst.m_low()), 1.0 - 1.0 / p);

  const std::vector<LevelFunction> means = riesz_means_at(inst.f, inst.q);
  std::vector<double> t(inst.f.size(), 0.0);
  for (std::size_t s = 0; s < inst.q.size(); ++s) {
    const double inv = 1.0 / w(inst.q[s]);
    for (std::size_t r = 0; r < t.size(); ++r) t[r] = std::max(t[r], std::abs(means[s][r]) * inv);
  }

  if (p >= 0.5) {
    std::vector<cplx> tv(t.begin(), t.end());
    row.numerator = lp_quasinorm(LevelFunction(base, inst.level, std::move(tv)), p);
    row.analytic = p == 0.5 ? static_cast<double>(k) / w(inst.m_high()) : std::numeric_limits<double>::quiet_NaN();
  } else {
    const std::uint64_t q0 = inst.m_low() + 1;
    const double x = static_cast<double>(q0);
    row.lambda = 1.0 / (w(q0) * harmonic_number(q0) * x);
    const double cut = row.lambda * (1.0 - 1e-12);
    const auto hits = static_cast<double>(std::count_if(t.begin(), t.end(), [cut](double v) { return v >= cut; }));
    row.numerator = row.lambda * std::pow(hits / static_cast<double>(t.size()), 1.0 / p);
    row.analytic = std::pow(x, 1.0 / p - 2.0) / (w(q0) * std::log(x));
  }
  row.ratio = row.numerator / row.hardy;
  return row;
}

inline BlowupTable blowup_table(const VilenkinBase& base, const WeightSpec& w, double p, std::size_t k_first,
                                std::size_t k_last) {
  if (k_first < 1 || k_last < k_first) throw std::invalid_argument("blowup_table: need 1 <= k_first <= k_last");
  if (2 * k_last + 1 > base.depth()) {
    throw std::out_of_range("blowup_table: k = " + std::to_string(k_last) + " needs depth " +
                            std::to_string(2 * k_last + 1));
  }
  BlowupTable t{w.describe(), p, p < 0.5, {}, true, Trend::flat};
  std::vector<double> ratios;
  for (std::size_t k = k_first; k <= k_last; ++k) {
    t.rows.push_back(blowup_row(base, w, p, k));
    ratios.push_back(t.rows.back().ratio);
  }
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (!(ratios[i] > ratios[i - 1])) t.strictly_increasing = false;
  t.trend = classify_trend(ratios);
  return t;
}

}  // namespace vilenkin
