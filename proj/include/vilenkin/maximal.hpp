#pragma once

// Truncated maximal operators of the Fejer and Riesz means, weights and
// finite-range trend diagnostics for the weight conditions.
//
//   sigma* f = sup_{1<=n<=n_max} |sigma_n f|
//   R* f     = sup_{1<=n<=n_max} |R_n f|
//   R_phi* f = sup_{1<=n<=n_max} |R_n f| / phi(n)
//
// Logarithms are natural throughout.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vilenkin/group.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/level_function.hpp"
#include "vilenkin/martingale.hpp"

namespace vilenkin {

namespace detail {

inline double parse_double(std::string_view s, const std::string& context) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument(context + ": cannot parse number '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Weight phi(n) for n >= 1.
///
///   unit          1
///   log           log(n + 1)                              (R~* operator)
///   power_log:p   (n + 1)^{1/p - 2} / log(n + 1)          (R~_p* operator)
///   cond1:p       (n + 1)^{1/p - 2} log^{2 floor(1/2 + p)}(n + 1)
///   table:a,b,..  phi(1) = a, phi(2) = b, ..., constant after the last entry
struct WeightSpec {
  enum class Kind { unit, log, power_log, cond1, table };

  Kind kind = Kind::unit;
  double p = 0.5;
  std::vector<double> table;

  static WeightSpec unit() { return {}; }
  static WeightSpec log() { return {Kind::log, 0.5, {}}; }
  static WeightSpec power_log(double p) { return {Kind::power_log, checked_p(p), {}}; }
  static WeightSpec cond1(double p) { return {Kind::cond1, checked_p(p), {}}; }
  static WeightSpec from_table(std::vector<double> t) {
    if (t.empty()) throw std::invalid_argument("weight table is empty");
    return {Kind::table, 0.5, std::move(t)};
  }

  static WeightSpec parse(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    const std::string ctx = "weight '" + std::string(text) + "'";
    auto need_arg = [&] {
      if (arg.empty()) throw std::invalid_argument(ctx + ": missing parameter");
    };
    if (name == "unit" && arg.empty()) return unit();
    if (name == "log" && arg.empty()) return log();
    if (name == "power_log") {
      need_arg();
      return power_log(detail::parse_double(arg, ctx));
    }
    if (name == "cond1") {
      need_arg();
      return cond1(detail::parse_double(arg, ctx));
    }
    if (name == "table") {
      need_arg();
      std::vector<double> t;
      std::string_view rest = arg;
      while (true) {
        const auto comma = rest.find(',');
        t.push_back(detail::parse_double(rest.substr(0, comma), ctx));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      return from_table(std::move(t));
    }
    throw std::invalid_argument(ctx + ": expected unit, log, power_log:<p>, cond1:<p> or table:<a,b,...>");
  }

  double operator()(std::uint64_t n) const {
    if (n == 0) throw std::domain_error("weight evaluated at n = 0");
    const double x = static_cast<double>(n) + 1.0;
    switch (kind) {
      case Kind::unit:
        return 1.0;
      case Kind::log:
        return std::log(x);
      case Kind::power_log:
        return std::pow(x, 1.0 / p - 2.0) / std::log(x);
      case Kind::cond1:
        return std::pow(x, 1.0 / p - 2.0) * std::pow(std::log(x), 2.0 * std::floor(0.5 + p));
      case Kind::table:
        return table[std::min<std::uint64_t>(n, table.size()) - 1];
    }
    return 1.0;
  }

  std::string describe() const {
    switch (kind) {
      case Kind::unit:
        return "unit";
      case Kind::log:
        return "log";
      case Kind::power_log:
        return "power_log:" + shortest(p);
      case Kind::cond1:
        return "cond1:" + shortest(p);
      case Kind::table: {
        std::string s = "table:";
        for (std::size_t i = 0; i < table.size(); ++i) s += (i ? "," : "") + shortest(table[i]);
        return s;
      }
    }
    return "unit";
  }

  /// phi must be positive and finite on [1, n_max].  Unit and table weights
  /// must also satisfy phi >= 1 and be nondecreasing; the named presets follow
  /// their formulas, which dip below 1 near n = 1.
  void validate(std::uint64_t n_max) const {
    double prev = 0.0;
    const bool strict = kind == Kind::unit || kind == Kind::table;
    const std::uint64_t last = kind == Kind::table ? std::min<std::uint64_t>(n_max, table.size()) : n_max;
    for (std::uint64_t n = 1; n <= last; ++n) {
      const double v = (*this)(n);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error("weight " + describe() + " is not positive at n = " + std::to_string(n));
      }
      if (strict && v < 1.0) throw std::domain_error("weight " + describe() + " is below 1 at n = " + std::to_string(n));
      if (strict && v < prev) {
        throw std::domain_error("weight " + describe() + " decreases at n = " + std::to_string(n));
      }
      prev = v;
    }
  }

 private:
  static double checked_p(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::domain_error("weight exponent p must be positive");
    return p;
  }

  static std::string shortest(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
  }
};

struct MaximalReport {
  std::string op;
  std::uint64_t n_max = 0;
  LevelFunction result;               // pointwise sup, real
  std::vector<std::uint64_t> argmax;  // smallest n attaining the sup, per rank

  /// hist[n] = number of ranks whose sup is first attained at n.
  std::vector<std::uint64_t> argmax_histogram() const {
    std::vector<std::uint64_t> h(n_max + 1, 0);
    for (std::uint64_t n : argmax) ++h[n];
    return h;
  }
};

namespace detail {

template <class Value>
MaximalReport stream_sup(const LevelFunction& f, std::uint64_t n_max, std::string op, Value value) {
  require_positive_index(n_max, op.c_str());
  require_resolvable(f.base(), n_max, f.level(), op.c_str());
  auto s = SummationStream::partial_sums(f);
  std::vector<double> best(s.size(), 0.0);
  std::vector<std::uint64_t> arg(s.size(), 1);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    s.advance();
    for (std::size_t r = 0; r < best.size(); ++r) {
      const double v = value(s, r, n);
      if (v > best[r]) {
        best[r] = v;
        arg[r] = n;
      }
    }
  }
  std::vector<cplx> out(best.begin(), best.end());
  return {std::move(op), n_max, LevelFunction(f.base(), f.level(), std::move(out)), std::move(arg)};
}

}  // namespace detail

inline MaximalReport sigma_star(const LevelFunction& f, std::uint64_t n_max,
                                FejerConvention conv = FejerConvention::shifted) {
  return detail::stream_sup(f, n_max, "sigma*",
                            [conv](const SummationStream& s, std::size_t r, std::uint64_t) {
                              return std::abs(s.fejer_at(r, conv));
                            });
}

inline MaximalReport riesz_star(const LevelFunction& f, std::uint64_t n_max) {
  return detail::stream_sup(f, n_max, "R*", [](const SummationStream& s, std::size_t r, std::uint64_t) {
    return std::abs(s.riesz_at(r));
  });
}

inline MaximalReport weighted_riesz_star(const LevelFunction& f, const WeightSpec& w, std::uint64_t n_max) {
  w.validate(n_max);
  std::vector<double> inv(n_max + 1, 0.0);
  for (std::uint64_t n = 1; n <= n_max; ++n) inv[n] = 1.0 / w(n);
  return detail::stream_sup(f, n_max, "R*/" + w.describe(),
                            [&inv](const SummationStream& s, std::size_t r, std::uint64_t n) {
                              return std::abs(s.riesz_at(r)) * inv[n];
                            });
}

/// max_{n <= n_max} (1/l_n) (sum_{j=1}^{n-1} 1/(j+1) + 1), the constant in
/// |R_n f| <= C sigma* f obtained from the Abel form of R_n.
inline double abel_constant(std::uint64_t n_max) {
  double l = 0.0, tail = 0.0, best = 0.0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    l += 1.0 / static_cast<double>(n);
    if (n > 1) tail += 1.0 / static_cast<double>(n);
    best = std::max(best, (tail + 1.0) / l);
  }
  return best;
}

// -- weight conditions ------------------------------------------------------

enum class WeightCondition { cond55, cond66, cond1 };

inline const char* to_string(WeightCondition c) {
  switch (c) {
    case WeightCondition::cond55:
      return "cond55";
    case WeightCondition::cond66:
      return "cond66";
    case WeightCondition::cond1:
      return "cond1";
  }
  return "cond55";
}

inline WeightCondition parse_condition(std::string_view s) {
  if (s == "cond55" || s == "55") return WeightCondition::cond55;
  if (s == "cond66" || s == "66") return WeightCondition::cond66;
  if (s == "cond1" || s == "1") return WeightCondition::cond1;
  throw std::invalid_argument("unknown weight condition '" + std::string(s) + "'");
}

/// The quantity whose divergence the condition demands:
///   cond55  log(n+1) / phi(n)
///   cond66  (n+1)^{1/p-2} / (log(n+1) phi(n))
///   cond1   (n+1)^{1/p-2} log^{2 floor(1/2+p)}(n+1) / phi(n)
inline double condition_ratio(WeightCondition c, const WeightSpec& w, double p, std::uint64_t n) {
  detail::require_positive_exponent(p);
  const double x = static_cast<double>(n) + 1.0;
  switch (c) {
    case WeightCondition::cond55:
      return std::log(x) / w(n);
    case WeightCondition::cond66:
      return std::pow(x, 1.0 / p - 2.0) / (std::log(x) * w(n));
    case WeightCondition::cond1:
      return std::pow(x, 1.0 / p - 2.0) * std::pow(std::log(x), 2.0 * std::floor(0.5 + p)) / w(n);
  }
  return 0.0;
}

enum class Trend { diverging, flat, decreasing };

inline const char* to_string(Trend t) {
  switch (t) {
    case Trend::diverging:
      return "diverging-trend";
    case Trend::flat:
      return "flat";
    case Trend::decreasing:
      return "decreasing";
  }
  return "flat";
}

/// Finite-range trend of a sequence sampled on a roughly geometric grid.
///
/// decreasing: nonincreasing with a total drop beyond tolerance.
/// diverging:  strictly increasing, and the last two increments, continued
///             geometrically, would add at least the current value again.
/// flat:       everything else, including increasing sequences whose
///             increments shrink fast enough to suggest a finite limit.
inline Trend classify_trend(const std::vector<double>& v, double rel_tol = 1e-9) {
  if (v.size() < 2) return Trend::flat;
  const double scale = std::max({1e-300, std::abs(v.front()), std::abs(v.back())});
  const double tol = rel_tol * scale;
  bool up = true, down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = v[i] - v[i - 1];
    if (d <= tol) up = false;
    if (d > tol) down = false;
  }
  if (down) return v.front() - v.back() > tol ? Trend::decreasing : Trend::flat;
  if (!up) return Trend::flat;
  if (v.size() < 3) return Trend::diverging;
  const std::size_t n = v.size();
  const double d_last = v[n - 1] - v[n - 2];
  const double d_prev = v[n - 2] - v[n - 3];
  const double rho = d_last / d_prev;
  if (rho >= 1.0) return Trend::diverging;
  const double projected = d_last * rho / (1.0 - rho);
  return projected >= std::abs(v.back()) ? Trend::diverging : Trend::flat;
}

struct TrendTable {
  WeightCondition condition = WeightCondition::cond55;
  std::string weight;
  double p = 0.5;
  std::vector<std::uint64_t> grid;
  std::vector<double> ratio;
  Trend trend = Trend::flat;
};

/// Finite-grid diagnostic only; it says nothing about the limit.
inline TrendTable weight_trend(const WeightSpec& w, WeightCondition c, double p,
                               const std::vector<std::uint64_t>& grid) {
  TrendTable t{c, w.describe(), p, grid, {}, Trend::flat};
  for (std::uint64_t n : grid) t.ratio.push_back(condition_ratio(c, w, p, n));
  t.trend = classify_trend(t.ratio);
  return t;
}

/// n = 2^1, 2^2, ..., 2^e
inline std::vector<std::uint64_t> geometric_grid(unsigned e) {
  std::vector<std::uint64_t> g;
  for (unsigned i = 1; i <= e && i < 64; ++i) g.push_back(std::uint64_t{1} << i);
  return g;
}

// -- H_p -> L_p ratios ------------------------------------------------------

struct OperatorSpec {
  enum class Op { sigma, riesz };
  Op op = Op::riesz;
  WeightSpec weight;
  std::uint64_t n_max = 0;  // 0 = M_N of the input
  FejerConvention convention = FejerConvention::shifted;

  static Op parse_op(std::string_view s) {
    if (s == "sigma") return Op::sigma;
    if (s == "riesz") return Op::riesz;
    throw std::invalid_argument("unknown operator '" + std::string(s) + "', expected sigma or riesz");
  }
};

/// sigma* (weight ignored) or the weighted Riesz maximal operator.
inline MaximalReport apply_operator(const LevelFunction& f, const OperatorSpec& spec) {
  const std::uint64_t n = spec.n_max ? spec.n_max : f.size();
  if (spec.op == OperatorSpec::Op::sigma) return sigma_star(f, n, spec.convention);
  if (spec.weight.kind == WeightSpec::Kind::unit) return riesz_star(f, n);
  return weighted_riesz_star(f, spec.weight, n);
}

struct HpRatio {
  double hardy = 0.0;      // ||f||_{H_p}
  double strong = 0.0;     // ||Tf||_p / ||f||_{H_p}
  double weak = 0.0;       // sup_l l^p mu(|Tf| > l) / ||f||_{H_p}^p
  double weak_root = 0.0;  // sup_l l mu(|Tf| > l)^{1/p} / ||f||_{H_p}
  std::string formula;
};

inline HpRatio hp_to_lp_ratio(const Martingale& m, const OperatorSpec& spec, double p) {
  detail::require_positive_exponent(p);
  HpRatio r;
  r.hardy = hardy_quasinorm(m, p);
  if (!(r.hardy > 0.0)) throw std::domain_error("hp_to_lp_ratio: H_p quasi-norm is zero");
  const LevelFunction t = apply_operator(m.top(), spec).result;
  r.strong = lp_quasinorm(t, p) / r.hardy;
  r.weak = weak_lp(t, p) / std::pow(r.hardy, p);
  r.weak_root = weak_lp_root(t, p) / r.hardy;
  r.formula =
      "strong=||Tf||_p/||f||_Hp; weak=sup_l l^p mu(|Tf|>l)/||f||_Hp^p; weak_root=sup_l l mu(|Tf|>l)^(1/p)/||f||_Hp";
  return r;
}

inline HpRatio hp_to_lp_ratio(const LevelFunction& f, const OperatorSpec& spec, double p) {
  return hp_to_lp_ratio(martingale_from_function(f), spec, p);
}

// -- atoms ------------------------------------------------------------------

/// Base of depth K + extra continuing the moduli cyclically.
inline VilenkinBase extend_base(const VilenkinBase& base, std::size_t extra) {
  return make_base(base.moduli(), base.depth() + extra);
}

/// integral over the complement of supp(a) of (R_phi* a)^p, with the atom
/// resolved `extra` levels below its base depth and n_max = M_K there.
inline double atom_tail_integral(const PAtom& a, const WeightSpec& w, double p, std::size_t extra = 0) {
  detail::require_positive_exponent(p);
  const VilenkinBase base = extend_base(a.values.base(), extra);
  const std::size_t K = base.depth();
  const LevelFunction v = LevelFunction(base, a.values.level(), {a.values.values().begin(), a.values.values().end()})
                              .refine(K);
  const MaximalReport rep = weighted_riesz_star(v, w, base.size());
  const Cylinder support = base.cylinder_of_rank(a.support.rank, a.support.level);
  auto [lo, hi] = base.rank_block(support, K);
  double acc = 0.0;
  for (std::size_t r = 0; r < rep.result.size(); ++r)
    if (r < lo || r >= hi) acc += std::pow(rep.result[r].real(), p);
  return acc / static_cast<double>(rep.result.size());
}

}  // namespace vilenkin
