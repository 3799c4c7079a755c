#pragma once

// Subcommand implementations for the vilenkin command-line tool.  Each
// command writes its whole report to an ostream and returns the exit status.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vilenkin/vilenkin.hpp"

namespace vilenkin::cli {

using json = nlohmann::ordered_json;

inline constexpr std::uint64_t kResourceGuard = std::uint64_t{1} << 20;

enum Exit : int { kOk = 0, kChecksFailed = 1, kUsage = 2, kRefused = 3 };

/// Bad flags or flag combinations.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input within the flag grammar that exceeds the resource guard.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<int> moduli{2};
  std::optional<std::size_t> depth;
  std::optional<std::uint64_t> seed;
  std::string format;  // empty: the command's native format

  json echo(std::size_t effective_depth) const {
    json j;
    j["base"] = moduli;
    j["depth"] = effective_depth;
    if (seed) j["seed"] = *seed;
    else j["seed"] = nullptr;
    return j;
  }
};

inline std::vector<int> parse_moduli(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--base: cannot parse modulus '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--base: empty modulus list");
  return out;
}

/// Base at the configured depth (or `fallback_depth`), refusing M_K above the guard.
inline VilenkinBase checked_base(const RunConfig& cfg, std::size_t fallback_depth) {
  const std::size_t depth = cfg.depth.value_or(fallback_depth);
  if (depth == 0) throw UsageError("--depth must be at least 1");
  for (int m : cfg.moduli)
    if (m < 2) throw UsageError("invalid Vilenkin base: modulus " + std::to_string(m) + " is below 2");
  long double size = 1;
  for (std::size_t k = 0; k < depth; ++k) size *= cfg.moduli[k % cfg.moduli.size()];
  if (size > static_cast<long double>(kResourceGuard)) {
    throw ResourceError("refusing to run: M_K = " + io::format_double(static_cast<double>(size)) +
                        " exceeds the resource guard 2^20");
  }
  return make_base(cfg.moduli, depth);
}

inline std::string pick_format(const RunConfig& cfg, const char* native, bool csv_ok, bool json_ok) {
  const std::string f = cfg.format.empty() ? native : cfg.format;
  if ((f == "csv" && csv_ok) || (f == "json" && json_ok)) return f;
  throw UsageError("--format " + f + " is not supported by this command");
}

using io::format_double;

// -- kernel dump --------------------------------------------------------------

inline int kernel_dump(const RunConfig& cfg, const std::string& which, std::uint64_t n, const std::string& convention,
                       bool spectrum, std::ostream& out) {
  const VilenkinBase base = checked_base(cfg, 10);
  const std::size_t L = base.depth();
  FejerConvention conv;
  if (convention == "shifted") conv = FejerConvention::shifted;
  else if (convention == "unshifted") conv = FejerConvention::unshifted;
  else throw UsageError("--convention must be shifted or unshifted");

  LevelFunction k = LevelFunction::zero(base, L);
  if (which == "dirichlet") k = dirichlet(base, n, L);
  else if (which == "fejer") k = fejer_kernel(base, n, L, conv);
  else if (which == "riesz") k = riesz_kernel(base, n, L);
  else throw UsageError("--which must be dirichlet, fejer or riesz");

  std::vector<cplx> values(k.values().begin(), k.values().end());
  if (spectrum) values = forward(k).coeffs;
  const char* index_name = spectrum ? "index" : "rank";

  if (pick_format(cfg, "csv", true, true) == "csv") {
    io::CsvWriter w(out);
    w.row({index_name, "real", "imag"});
    for (std::size_t r = 0; r < values.size(); ++r)
      w.row({std::to_string(r), format_double(values[r].real()), format_double(values[r].imag())});
    return kOk;
  }
  json j;
  j["command"] = "kernel dump";
  j["config"] = cfg.echo(L);
  j["which"] = which;
  j["n"] = n;
  if (which == "fejer") j["convention"] = convention;
  j["domain"] = spectrum ? "spectrum" : "group";
  json v = json::array();
  for (const cplx& c : values) v.push_back({c.real(), c.imag()});
  j["values"] = std::move(v);
  out << j.dump(1) << '\n';
  return kOk;
}

// -- verify -------------------------------------------------------------------

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // how value is compared with threshold
  std::string detail;
};

class Report {
 public:
  void below(std::string name, double value, double threshold, std::string detail = {}) {
    checks_.push_back({std::move(name), value < threshold, value, threshold, "<", std::move(detail)});
  }
  void at_least(std::string name, double value, double threshold, std::string detail = {}) {
    checks_.push_back({std::move(name), value >= threshold, value, threshold, ">=", std::move(detail)});
  }
  void holds(std::string name, bool ok, std::string detail = {}) {
    checks_.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0, "==", std::move(detail)});
  }
  void constant(const std::string& name, double v) { constants_[name] = v; }
  void note(const std::string& text) { notes_.push_back(text); }

  bool passed() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }

  void write(std::ostream& out, const std::string& format, const json& header) const {
    if (format == "csv") {
      io::CsvWriter w(out);
      w.row({"check", "passed", "value", "relation", "threshold", "detail"});
      for (const auto& c : checks_)
        w.row({c.name, c.passed ? "true" : "false", format_double(c.value), c.relation, format_double(c.threshold),
               c.detail});
      for (const auto& [k, v] : constants_.items())
        w.row({"constant:" + k, "true", format_double(v.get<double>()), "", "", "empirical"});
      return;
    }
    json j = header;
    json arr = json::array();
    for (const auto& c : checks_) {
      json e;
      e["name"] = c.name;
      e["passed"] = c.passed;
      e["value"] = c.value;
      e["relation"] = c.relation;
      e["threshold"] = c.threshold;
      if (!c.detail.empty()) e["detail"] = c.detail;
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    j["constants"] = constants_.empty() ? json::object() : constants_;
    j["notes"] = notes_;
    j["passed"] = passed();
    out << j.dump(1) << '\n';
  }

 private:
  std::vector<Check> checks_;
  json constants_ = json::object();
  std::vector<std::string> notes_;
};

namespace detail {

inline LevelFunction random_function(const VilenkinBase& base, std::size_t level, std::mt19937_64& rng) {
  std::vector<cplx> v(base.order(level));
  for (auto& x : v) x = cplx(2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1);
  return LevelFunction(base, level, std::move(v));
}

/// Largest level whose order does not exceed `cap`.
inline std::size_t level_within(const VilenkinBase& base, std::uint64_t cap) {
  std::size_t L = 0;
  while (L < base.depth() && base.order(L + 1) <= cap) ++L;
  return L;
}

inline void verify_kernels(const VilenkinBase& base, std::mt19937_64& rng, Report& rep) {
  const std::size_t K = base.depth();
  const double scale = std::max(1.0, static_cast<double>(base.size()) / 4096.0);
  double res = 0.0;
  for (std::size_t n = 0; n <= K; ++n) {
    const LevelFunction d = dirichlet(base, base.order(n), K);
    const std::uint64_t inside = base.block(n, K);
    for (std::uint64_t r = 0; r < base.size(); ++r)
      res = std::max(res, std::abs(d[r] - (r < inside ? static_cast<double>(base.order(n)) : 0.0)));
  }
  rep.below("dirichlet_power_closed_form", res, 1e-12 * scale, "max |D_{M_n} - M_n 1_{I_n}|, n <= K");

  // transform against a direct character sum at a level with M <= 1296
  const std::size_t Lt = level_within(base, 1296);
  const LevelFunction f = random_function(base, Lt, rng);
  const Spectrum s = forward(f);
  double err = 0.0, top = 0.0;
  for (std::uint64_t n = 0; n < base.order(Lt); ++n) {
    cplx acc = 0.0;
    for (std::uint64_t r = 0; r < f.size(); ++r) acc += f[r] * std::conj(character(base, n, base.point_of(r, Lt)));
    acc /= static_cast<double>(f.size());
    err = std::max(err, std::abs(acc - s.coeffs[n]));
    top = std::max(top, std::abs(acc));
  }
  rep.below("transform_fast_vs_naive", err / top, 1e-10, "relative, level " + std::to_string(Lt));

  double parseval = 0.0, round_trip = 0.0;
  const std::size_t Lp = level_within(base, 1 << 14);
  for (int t = 0; t < 10; ++t) {
    const LevelFunction g = random_function(base, Lp, rng);
    const Spectrum sg = forward(g);
    double ef = 0.0, es = 0.0;
    for (const cplx& v : g.values()) ef += std::norm(v);
    for (const cplx& c : sg.coeffs) es += std::norm(c);
    ef /= static_cast<double>(g.size());
    parseval = std::max(parseval, std::abs(ef - es) / ef);
    round_trip = std::max(round_trip, max_abs_difference(inverse(sg), g));
  }
  rep.below("parseval", parseval, 1e-10, "relative, 10 random functions");
  rep.below("round_trip", round_trip, 1e-9);

  if (base.is_dyadic()) {
    const std::size_t A_max = std::min<std::size_t>(K, 10);
    double gat = 0.0;
    for (std::size_t A = 0; A <= A_max; ++A) {
      const LevelFunction k = fejer_kernel(base, std::uint64_t{1} << A, A_max);
      for (std::uint64_t r = 0; r < k.size(); ++r)
        gat = std::max(gat, std::abs(k[r] - gat_closed_form(base, A, base.point_of(r * base.block(A_max, K), K))));
    }
    rep.below("gat_closed_form", gat, 1e-10, "A <= " + std::to_string(A_max));
  } else {
    rep.note("gat_closed_form skipped: base is not dyadic");
  }

  const std::size_t Lf = level_within(base, 4096);
  const std::uint64_t hi = base.order(Lf), lo = hi / 4;
  const FejerIntegrability fi = fejer_l1_sweep(base, Lf, hi);
  rep.constant("fejer_l1_max", fi.running_max.back());
  if (hi >= 1024) {
    rep.below("fejer_l1_running_max_growth", fi.growth(lo, hi), 0.01,
              "n in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  } else {
    rep.note("fejer_l1 growth not checked below M = 1024");
  }
}

inline void verify_identities(const VilenkinBase& base, std::mt19937_64& rng, Report& rep) {
  const std::size_t La = level_within(base, 4096);
  const LevelFunction f = random_function(base, La, rng);
  const AbelResiduals ab = abel_identity_residuals(f, std::min<std::uint64_t>(512, f.size()));
  rep.below("abel_riesz_kernel", ab.kernel, 1e-9, "shifted Fejer convention");
  rep.below("abel_riesz_mean", ab.mean, 1e-9, "shifted Fejer convention");

  const std::size_t k_max = std::min<std::size_t>((level_within(base, 1 << 14) - 1) / 2, 6);
  if (k_max == 0) {
    rep.note("counterexample identities skipped: depth below 3");
    return;
  }
  double partial = 0.0, shift = 0.0, modulus = 0.0, lower = std::numeric_limits<double>::infinity();
  bool modulus_ineq = true;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const CounterexampleInstance inst = build_instance(base, k);
    const std::uint64_t hi = inst.m_high();
    const std::uint64_t step = std::max<std::uint64_t>(1, hi / 64);
    for (std::uint64_t i = 0; i <= hi; i += step) partial = std::max(partial, partial_sum_closed_form(inst, i).residual);
    partial = std::max(partial, partial_sum_closed_form(inst, inst.m_low() + 1).residual);
    shift = std::max(shift, shift_identity_sweep(inst));
    const std::vector<LevelFunction> means = riesz_means_at(inst.f, inst.q);
    for (std::size_t s = 0; s < k; ++s) {
      const QEvaluation e = riesz_at_q(inst, s, WeightSpec::unit(), &means[s]);
      modulus = std::max(modulus, e.modulus_residual);
      modulus_ineq = modulus_ineq && e.modulus_inequality;
      lower = std::min(lower, e.min_ratio);
    }
  }
  rep.below("partial_sums_of_counterexample", partial, 1e-9, "k <= " + std::to_string(k_max));
  rep.below("shift_identity", shift, 1e-9, "all j in [1, M_{2k})");
  rep.below("riesz_modulus_identity_on_I2s", modulus, 1e-9);
  rep.holds("riesz_modulus_inequality_everywhere", modulus_ineq);
  rep.at_least("riesz_lower_bound_constant_positive", lower, 1e-12, "min over I_{2s} \\ I_{2s+1}");
  rep.constant("riesz_lower_bound_c_emp", lower);
}

inline void verify_lemmas(const VilenkinBase& base, std::size_t max_A, Report& rep) {
  if (base.is_dyadic()) {
    const std::size_t A_max = std::min(max_A, base.depth());
    double gat = 0.0;
    for (std::size_t A = 0; A <= A_max; ++A) {
      const LevelFunction k = fejer_kernel(base, std::uint64_t{1} << A, A_max);
      for (std::uint64_t r = 0; r < k.size(); ++r)
        gat = std::max(gat, std::abs(k[r] - gat_closed_form(base, A, base.point_of(r * base.block(A_max, base.depth()), base.depth()))));
    }
    rep.below("gat_closed_form", gat, 1e-10, "A <= " + std::to_string(A_max));
  } else {
    rep.note("gat_closed_form skipped: base is not dyadic");
  }

  const std::size_t Ls = level_within(base, 4096);
  const VilenkinBase sweep_base = make_base(base.moduli(), Ls);
  // the series tail needs about seven octaves above M_N before its running max settles
  for (std::size_t N = 1; N <= 5 && N < Ls && sweep_base.order(N) * 128 <= sweep_base.size(); ++N) {
    const ClassSweep s = class_sweep(sweep_base, N, sweep_base.order(N), sweep_base.size());
    const std::string tag = "N" + std::to_string(N);
    rep.below("class_integral_growth_" + tag, s.integral_growth(), 0.01);
    rep.below("class_series_growth_" + tag, s.series_growth(), 0.01);
    rep.constant("class_integral_c_emp_" + tag, s.integral_constant());
    rep.constant("class_series_c_emp_" + tag, s.series_constant());
  }
  rep.note("class sweeps at level " + std::to_string(Ls) + " (M = " + std::to_string(sweep_base.size()) + ")");
}

inline void verify_atoms(const VilenkinBase& base, std::mt19937_64& rng, Report& rep) {
  const std::size_t L = level_within(base, 2048);
  if (L < 1) throw UsageError("verify atoms: depth must be at least 1");
  const VilenkinBase b = make_base(base.moduli(), L);
  std::vector<PAtom> atoms;
  for (int i = 0; i < 20; ++i) atoms.push_back(random_atom(b, 0.5, L, rng));
  bool valid = true;
  double hardy = 0.0, tail = 0.0;
  for (const PAtom& a : atoms) {
    valid = valid && validate_atom(a).valid;
    hardy = std::max(hardy, hardy_quasinorm(a.values, 0.5));
  }
  const std::vector<double> tails =
      parallel_map<double>(atoms.size(), [&](std::size_t i) { return atom_tail_integral(atoms[i], WeightSpec::log(), 0.5); });
  for (double t : tails) tail = std::max(tail, t);
  rep.holds("random_atoms_valid", valid, "20 saturated 1/2-atoms");
  rep.below("atom_hardy_norm", hardy, 1.0 + 1e-12, "||a||_{H_1/2} <= 1");
  rep.holds("atom_tail_integral_finite", std::isfinite(tail));
  rep.constant("atom_tail_integral_max", tail);

  std::vector<double> coeffs;
  double budget = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    coeffs.push_back(uniform01(rng) - 0.5);
    budget += std::sqrt(std::abs(coeffs.back()));
  }
  const Martingale m = assemble_martingale(b, atoms, coeffs);
  rep.below("assembled_hardy_within_budget", std::sqrt(hardy_quasinorm(m, 0.5)) / budget, 1.0 + 1e-12,
            "||f||_{H_p}^p / sum |mu|^p");
}

}  // namespace detail

inline int verify(const RunConfig& cfg, const std::string& suite, std::size_t max_A, std::ostream& out) {
  if (suite != "kernels" && suite != "identities" && suite != "lemmas" && suite != "atoms") {
    throw UsageError("unknown verify suite '" + suite + "', expected kernels, identities, lemmas or atoms");
  }
  const VilenkinBase base = checked_base(cfg, 10);
  const std::uint64_t seed = cfg.seed.value_or(1);
  std::mt19937_64 rng(seed);
  Report rep;
  if (suite == "kernels") detail::verify_kernels(base, rng, rep);
  else if (suite == "identities") detail::verify_identities(base, rng, rep);
  else if (suite == "lemmas") detail::verify_lemmas(base, max_A, rep);
  else detail::verify_atoms(base, rng, rep);

  json header;
  header["command"] = "verify";
  header["suite"] = suite;
  header["config"] = cfg.echo(base.depth());
  header["config"]["seed"] = seed;
  if (suite == "lemmas") header["max_A"] = max_A;
  header["fejer_convention"] = "shifted";
  rep.write(out, pick_format(cfg, "json", true, true), header);
  return rep.passed() ? kOk : kChecksFailed;
}

// -- atoms corpus -------------------------------------------------------------

/// Bases used when no --base is given: (moduli, depth) with M_K <= 1024.
inline std::vector<VilenkinBase> default_corpus_bases() {
  return {make_base({2}, 10), make_base({2, 3}, 6), make_base({3}, 6), make_base({2, 5}, 6), make_base({4, 3}, 5)};
}

inline json atom_to_json(const PAtom& a) {
  json j;
  const VilenkinBase& b = a.values.base();
  j["moduli"] = std::vector<int>(b.moduli().begin(), b.moduli().end());
  j["p"] = a.p;
  j["support"] = {{"level", a.support.level}, {"rank", a.support.rank}};
  j["level"] = a.values.level();
  json v = json::array();
  for (const cplx& c : a.values.values()) v.push_back(c.real());
  j["values"] = std::move(v);
  return j;
}

inline PAtom atom_from_json(const json& j) {
  try {
    const VilenkinBase b(j.at("moduli").get<std::vector<int>>());
    const auto level = j.at("level").get<std::size_t>();
    const auto values = j.at("values").get<std::vector<double>>();
    const Cylinder support = b.cylinder_of_rank(j.at("support").at("rank").get<std::uint64_t>(),
                                                j.at("support").at("level").get<std::size_t>());
    return PAtom{j.at("p").get<double>(), support, LevelFunction::from_real(b, level, values)};
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed atom record: ") + e.what());
  }
}

inline int atoms_corpus(const RunConfig& cfg, std::size_t count, double p, bool base_given, std::ostream& out) {
  if (!cfg.seed) throw UsageError("atoms corpus: --seed is required");
  if (!(p > 0.0 && p <= 1.0)) throw UsageError("atoms corpus: --p must lie in (0, 1]");
  pick_format(cfg, "json", false, true);
  std::vector<VilenkinBase> bases;
  if (base_given) bases.push_back(checked_base(cfg, 8));
  else bases = default_corpus_bases();
  std::mt19937_64 rng(*cfg.seed);
  json j;
  j["command"] = "atoms corpus";
  j["config"] = cfg.echo(base_given ? bases.front().depth() : 0);
  if (!base_given) j["config"]["base"] = "mixed";
  j["count"] = count;
  j["p"] = p;
  json arr = json::array();
  for (std::size_t i = 0; i < count; ++i) {
    const VilenkinBase& b = bases[i % bases.size()];
    arr.push_back(atom_to_json(random_atom(b, p, b.depth(), rng)));
  }
  j["atoms"] = std::move(arr);
  out << j.dump() << '\n';
  return kOk;
}

inline std::vector<PAtom> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open corpus file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("corpus '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.contains("atoms") || !j["atoms"].is_array()) throw UsageError("corpus '" + path + "' has no atoms array");
  std::vector<PAtom> atoms;
  for (const auto& a : j["atoms"]) atoms.push_back(atom_from_json(a));
  return atoms;
}

// -- maximal table ------------------------------------------------------------

inline int maximal_table(const RunConfig& cfg, const std::string& op, const std::string& weight, double p,
                         std::uint64_t n_max, const std::string& input, std::ostream& out) {
  if (!(p > 0.0)) throw UsageError("maximal table: --p must be positive");
  OperatorSpec spec;
  try {
    spec.op = OperatorSpec::parse_op(op);
    spec.weight = WeightSpec::parse(weight);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::vector<PAtom> atoms = load_corpus(input);
  for (const PAtom& a : atoms) {
    if (a.values.base().size() > kResourceGuard) throw ResourceError("corpus atom exceeds the resource guard 2^20");
    if (n_max > a.values.size()) {
      throw UsageError("--nmax " + std::to_string(n_max) + " exceeds M_N = " + std::to_string(a.values.size()) +
                       " of a corpus atom");
    }
  }

  struct Row {
    HpRatio ratio;
    double tail = 0.0;
    std::uint64_t n_used = 0;
  };
  const auto rows = parallel_map<Row>(atoms.size(), [&](std::size_t i) {
    const PAtom& a = atoms[i];
    OperatorSpec s = spec;
    s.n_max = n_max ? n_max : a.values.size();
    Row r;
    r.ratio = hp_to_lp_ratio(a.values, s, p);
    r.n_used = s.n_max;
    const MaximalReport rep = apply_operator(a.values, s);
    auto [lo, hi] = a.values.base().rank_block(a.support, a.values.level());
    double acc = 0.0;
    for (std::size_t k = 0; k < rep.result.size(); ++k)
      if (k < lo || k >= hi) acc += std::pow(rep.result[k].real(), p);
    r.tail = acc / static_cast<double>(rep.result.size());
    return r;
  });

  const std::vector<std::string> cols{"index", "base", "level", "support_level", "support_rank", "n_max", "hardy_norm",
                                      "strong_ratio", "weak_ratio", "weak_root_ratio", "tail_integral"};
  if (pick_format(cfg, "csv", true, true) == "csv") {
    io::CsvWriter w(out);
    w.row(cols);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const PAtom& a = atoms[i];
      std::string moduli;
      for (int m : a.values.base().moduli()) moduli += (moduli.empty() ? "" : ";") + std::to_string(m);
      const Row& r = rows[i];
      w.row({std::to_string(i), moduli, std::to_string(a.values.level()), std::to_string(a.support.level),
             std::to_string(a.support.rank), std::to_string(r.n_used), format_double(r.ratio.hardy),
             format_double(r.ratio.strong), format_double(r.ratio.weak), format_double(r.ratio.weak_root),
             format_double(r.tail)});
    }
    return kOk;
  }
  json j;
  j["command"] = "maximal table";
  j["op"] = op;
  j["weight"] = spec.weight.describe();
  j["p"] = p;
  if (!rows.empty()) j["formula"] = rows.front().ratio.formula;
  j["columns"] = cols;
  json arr = json::array();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Row& r = rows[i];
    arr.push_back({i, r.n_used, r.ratio.hardy, r.ratio.strong, r.ratio.weak, r.ratio.weak_root, r.tail});
  }
  j["rows"] = std::move(arr);
  out << j.dump(1) << '\n';
  return kOk;
}

// -- counterexample sweep -----------------------------------------------------

inline int counterexample_sweep(const RunConfig& cfg, const std::string& phi, double p, std::size_t k_max,
                                std::ostream& out) {
  if (k_max < 1) throw UsageError("--kmax must be at least 1");
  if (!(p > 0.0)) throw UsageError("--p must be positive");
  WeightSpec w;
  try {
    w = WeightSpec::parse(phi);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const VilenkinBase base = checked_base(cfg, 2 * k_max + 1);
  if (2 * k_max + 1 > base.depth()) {
    throw UsageError("--kmax " + std::to_string(k_max) + " needs --depth >= " + std::to_string(2 * k_max + 1));
  }
  const BlowupTable t = blowup_table(base, w, p, 1, k_max);
  const std::vector<std::string> cols{"k", "q_values", "hardy_norm", "numerator", "ratio", "analytic_lower_bound",
                                      "hardy_scaled", "trend"};
  if (pick_format(cfg, "csv", true, true) == "csv") {
    io::CsvWriter wr(out);
    wr.row(cols);
    for (const BlowupRow& r : t.rows) {
      wr.row({std::to_string(r.k), io::join_uints(r.q), format_double(r.hardy), format_double(r.numerator),
              format_double(r.ratio), format_double(r.analytic), format_double(r.hardy_scaled), to_string(t.trend)});
    }
    return kOk;
  }
  json j;
  j["command"] = "counterexample sweep";
  j["config"] = cfg.echo(base.depth());
  j["phi"] = t.weight;
  j["p"] = p;
  j["mode"] = t.weak_mode ? "weak" : "strong";
  j["strictly_increasing"] = t.strictly_increasing;
  j["trend"] = to_string(t.trend);
  json arr = json::array();
  for (const BlowupRow& r : t.rows) {
    json e;
    e["k"] = r.k;
    e["q_values"] = r.q;
    e["hardy_norm"] = r.hardy;
    e["numerator"] = r.numerator;
    e["ratio"] = r.ratio;
    e["analytic_lower_bound"] = std::isfinite(r.analytic) ? json(r.analytic) : json(nullptr);
    e["hardy_scaled"] = r.hardy_scaled;
    if (t.weak_mode) e["lambda"] = r.lambda;
    arr.push_back(std::move(e));
  }
  j["rows"] = std::move(arr);
  out << j.dump(1) << '\n';
  return kOk;
}

// -- weight trend -------------------------------------------------------------

inline int weight_trend_table(const RunConfig& cfg, const std::string& weight, const std::string& condition, double p,
                              unsigned e_max, std::ostream& out) {
  WeightSpec w;
  WeightCondition c;
  try {
    w = WeightSpec::parse(weight);
    c = parse_condition(condition);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!(p > 0.0)) throw UsageError("--p must be positive");
  if (e_max < 2 || e_max > 62) throw UsageError("--emax must lie in [2, 62]");
  const TrendTable t = weight_trend(w, c, p, geometric_grid(e_max));
  if (pick_format(cfg, "csv", true, true) == "csv") {
    io::CsvWriter wr(out);
    wr.row({"n", "ratio", "trend"});
    for (std::size_t i = 0; i < t.grid.size(); ++i)
      wr.row({std::to_string(t.grid[i]), format_double(t.ratio[i]), to_string(t.trend)});
    return kOk;
  }
  json j;
  j["command"] = "weight trend";
  j["weight"] = t.weight;
  j["condition"] = to_string(c);
  j["p"] = p;
  j["grid"] = t.grid;
  j["ratio"] = t.ratio;
  j["trend"] = to_string(t.trend);
  j["note"] = "finite-grid diagnostic, not a limit statement";
  out << j.dump(1) << '\n';
  return kOk;
}

}  // namespace vilenkin::cli
