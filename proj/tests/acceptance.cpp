// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "oracles.hpp"
#include "vilenkin/vilenkin.hpp"

using namespace vilenkin;
namespace cli = vilenkin::cli;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using io::format_double;

std::string fmt(double v) { return format_double(v); }

int failures = 0;

void run(int id, const std::string& title, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = time_limit <= 0 || secs < time_limit;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::ostringstream time;
  time.precision(3);
  time << std::fixed << secs << " s";
  if (time_limit > 0) time << " (limit " << time_limit << " s)";
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << ": " << o.detail << "; " << time.str()
            << std::endl;
}

void info(const std::string& text) { std::cout << "      info: " << text << std::endl; }

LevelFunction random_function(const VilenkinBase& b, std::size_t level, std::mt19937_64& rng) {
  return LevelFunction(b, level, oracle::random_values(rng, b.order(level)));
}

// 1. D_{M_n} = M_n 1_{I_n} for n <= K
Outcome closed_forms() {
  double worst = 0.0;
  for (const VilenkinBase& b : {dyadic_base(12), make_base({2, 3}, 7), make_base({3}, 6)}) {
    const std::size_t K = b.depth();
    for (std::size_t n = 0; n <= K; ++n) {
      const LevelFunction d = dirichlet(b, b.order(n), K);
      const std::uint64_t inside = b.block(n, K);
      for (std::uint64_t r = 0; r < b.size(); ++r)
        worst = std::max(worst, std::abs(d[r] - (r < inside ? static_cast<double>(b.order(n)) : 0.0)));
    }
  }
  return {worst < 1e-12, "max residual " + fmt(worst) + " < 1e-12 on 3 bases"};
}

// 2. Gat closed form against the brute-force shifted Fejer kernel
Outcome gat() {
  const VilenkinBase b = dyadic_base(10);
  const auto D = oracle::dirichlet_family(oracle::character_table(b, 10));
  double worst = 0.0;
  for (std::size_t A = 0; A <= 10; ++A) {
    const auto K = oracle::fejer(D, std::uint64_t{1} << A, true);
    for (std::uint64_t r = 0; r < b.size(); ++r)
      worst = std::max(worst, std::abs(K[r] - gat_closed_form(b, A, b.point_of(r, 10))));
  }
  return {worst < 1e-10, "max residual " + fmt(worst) + " < 1e-10, A <= 10, 1024 points"};
}

// 3. Abel identities, counterexample partial sums, shift identity, Riesz modulus on I_{2s}
Outcome identities() {
  double abel = 0.0, partial = 0.0, shift = 0.0, modulus = 0.0;
  bool ineq = true;
  std::mt19937_64 rng(2024);
  for (const VilenkinBase& b : {dyadic_base(12), make_base({2, 3}, 9)}) {
    const AbelResiduals ab = abel_identity_residuals(random_function(b, b.depth(), rng), b.size());
    const AbelResiduals ak = abel_identity_residuals(LevelFunction::constant(b, b.depth(), 1.0), b.size());
    abel = std::max({abel, ab.kernel, ab.mean, ak.kernel});
    for (std::size_t k = 1; 2 * k + 1 <= b.depth(); ++k) {
      const CounterexampleInstance inst = build_instance(b, k);
      const auto res = parallel_map<double>(b.size() + 1, [&](std::size_t i) {
        return partial_sum_closed_form(inst, i).residual;
      });
      for (double r : res) partial = std::max(partial, r);
      shift = std::max(shift, shift_identity_sweep(inst));
      const auto means = riesz_means_at(inst.f, inst.q);
      for (std::size_t s = 0; s < k; ++s) {
        const QEvaluation e = riesz_at_q(inst, s, WeightSpec::unit(), &means[s]);
        modulus = std::max(modulus, e.modulus_residual);
        ineq = ineq && e.modulus_inequality;
      }
    }
  }
  const double worst = std::max({abel, partial, shift, modulus});
  std::ostringstream d;
  d << "abel " << fmt(abel) << ", partial sums " << fmt(partial) << ", shift " << fmt(shift) << ", riesz modulus on I_2s "
    << fmt(modulus) << " (all < 1e-9), inequality off I_2s " << (ineq ? "holds" : "violated");
  return {worst < 1e-9 && ineq, d.str()};
}

// 4. running max of the Fejer kernel L1 norms
Outcome fejer_integrability() {
  const FejerIntegrability fi = fejer_l1_sweep(dyadic_base(12), 12, 4096);
  const double g = fi.growth(1024, 4096);
  return {g < 0.01 && std::isfinite(fi.running_max.back()),
          "growth 2^10 -> 2^12 " + fmt(g) + " < 0.01, recorded max " + fmt(fi.running_max.back())};
}

// 5. Fejer kernel block integrals over all cylinder classes, N <= 5, M_K = 4096
Outcome class_sweeps() {
  const VilenkinBase b = dyadic_base(12);
  const auto sweeps = parallel_map<ClassSweep>(5, [&](std::size_t i) { return class_sweep(b, i + 1, b.order(i + 1), b.size()); });
  bool ok = true;
  double worst = 0.0;
  std::ostringstream d;
  for (const ClassSweep& s : sweeps) {
    const double g = std::max(s.integral_growth(), s.series_growth());
    worst = std::max(worst, g);
    ok = ok && g < 0.01 && std::isfinite(s.integral_constant()) && std::isfinite(s.series_constant());
    d << "N=" << s.N << " c_emp " << fmt(s.integral_constant()) << "/" << fmt(s.series_constant()) << "; ";
  }
  d << "max top-octave growth " << fmt(worst) << " < 0.01";
  return {ok, d.str()};
}

void class_sweeps_non_dyadic() {
  const VilenkinBase b = make_base({2, 3}, 9);
  for (std::size_t N = 1; N <= 5; ++N) {
    const ClassSweep s = class_sweep(b, N, b.order(N), b.size());
    info("base (2,3) M_K = 2592, N = " + std::to_string(N) + ": growth " + fmt(s.integral_growth()) + " / " +
         fmt(s.series_growth()) + ", M_K/M_N = " + std::to_string(b.size() / b.order(N)));
  }
}

// 6. tail integral of the weighted Riesz maximal function over a seeded atom corpus
Outcome atom_stability() {
  cli::RunConfig cfg;
  cfg.seed = 20240601;
  std::ostringstream corpus;
  cli::atoms_corpus(cfg, 200, 0.5, false, corpus);
  const auto j = cli::json::parse(corpus.str());
  std::vector<PAtom> atoms;
  for (const auto& a : j["atoms"]) atoms.push_back(cli::atom_from_json(a));
  bool valid = true;
  for (const PAtom& a : atoms) valid = valid && validate_atom(a).valid;

  const WeightSpec w = WeightSpec::log();
  const auto d0 = parallel_map<double>(atoms.size(), [&](std::size_t i) { return atom_tail_integral(atoms[i], w, 0.5, 0); });
  const auto d1 = parallel_map<double>(atoms.size(), [&](std::size_t i) { return atom_tail_integral(atoms[i], w, 0.5, 1); });
  double m0 = 0.0, m1 = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    m0 = std::max(m0, d0[i]);
    m1 = std::max(m1, d1[i]);
    finite = finite && std::isfinite(d0[i]) && std::isfinite(d1[i]);
  }
  const double rel = std::abs(m0 - m1) / m1;
  return {valid && finite && rel < 0.10, std::to_string(atoms.size()) + " atoms on 5 bases, max at d " + fmt(m0) +
                                              ", at d+1 " + fmt(m1) + ", relative change " + fmt(rel) + " < 0.1"};
}

// 7. blow-up table
Outcome blowup() {
  const VilenkinBase b = dyadic_base(13);
  const BlowupTable unit = blowup_table(b, WeightSpec::unit(), 0.5, 1, 5);
  const BlowupTable lg = blowup_table(b, WeightSpec::log(), 0.5, 1, 5);
  const double gain = unit.rows.back().ratio / unit.rows.front().ratio;
  std::ostringstream d;
  d << "unit ratios";
  for (const auto& r : unit.rows) d << " " << fmt(r.ratio);
  d << ", gain " << fmt(gain) << " >= 2, " << (unit.strictly_increasing ? "strictly increasing" : "NOT increasing");
  d << "; log trend " << to_string(lg.trend);
  return {unit.strictly_increasing && gain >= 2.0 && lg.trend != Trend::diverging, d.str()};
}

// 8. ||f_k||_{H_p} / M_{2k}^{1-1/p} stays within a factor 4
Outcome hardy_scaling() {
  bool ok = true;
  std::ostringstream d;
  for (const VilenkinBase& b : {dyadic_base(11), make_base({2, 3}, 11)}) {
    for (double p : {0.3, 0.5, 1.0}) {
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (std::size_t k = 1; k <= 5; ++k) {
        const CounterexampleInstance inst = build_instance(b, k);
        const double v = hardy_quasinorm(inst.f, p) / std::pow(static_cast<double>(inst.m_low()), 1.0 - 1.0 / p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      ok = ok && hi / lo < 4.0;
      d << (b.is_dyadic() ? "dyadic" : "(2,3)") << " p=" << fmt(p) << " [" << fmt(lo) << ", " << fmt(hi) << "]; ";
    }
  }
  d << "max/min < 4";
  return {ok, d.str()};
}

// 9. fast transform against direct character sums, Parseval, round trip
Outcome transform_quality() {
  std::mt19937_64 rng(9);
  const std::vector<VilenkinBase> bases{dyadic_base(10), make_base({2, 3}, 8), make_base({3, 5, 2}, 5)};
  double naive = 0.0;
  for (const VilenkinBase& b : bases) {
    const LevelFunction f = random_function(b, b.depth(), rng);
    const auto psi = oracle::character_table(b, b.depth());
    const auto want = oracle::naive_forward(psi, {f.values().begin(), f.values().end()});
    const Spectrum s = forward(f);
    double err = 0.0, top = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
      err = std::max(err, std::abs(want[i] - s.coeffs[i]));
      top = std::max(top, std::abs(want[i]));
    }
    naive = std::max(naive, err / top);
  }
  double parseval = 0.0, trip = 0.0;
  for (int t = 0; t < 100; ++t) {
    const VilenkinBase& b = bases[t % bases.size()];
    const LevelFunction f = random_function(b, b.depth(), rng);
    const Spectrum s = forward(f);
    double ef = 0.0, es = 0.0;
    for (const cplx& v : f.values()) ef += std::norm(v);
    for (const cplx& c : s.coeffs) es += std::norm(c);
    ef /= static_cast<double>(f.size());
    parseval = std::max(parseval, std::abs(ef - es) / ef);
    trip = std::max(trip, max_abs_difference(inverse(s), f) / f.sup_norm());
  }
  return {naive < 1e-10 && parseval < 1e-10 && trip < 1e-9,
          "fast vs naive " + fmt(naive) + " < 1e-10 (M = 1024, 1296, 450), Parseval " + fmt(parseval) +
              " < 1e-10 over 100 functions, round trip " + fmt(trip) + " < 1e-9"};
}

// 10. seeded commands produce identical bytes, also across thread counts
Outcome determinism() {
  auto capture = [](const std::function<void(std::ostream&)>& cmd) {
    std::ostringstream out;
    cmd(out);
    return out.str();
  };
  cli::RunConfig seeded;
  seeded.seed = 77;
  cli::RunConfig mixed;
  mixed.moduli = {2, 3};
  mixed.depth = 7;
  mixed.seed = 3;
  const std::vector<std::function<void(std::ostream&)>> commands{
      [&](std::ostream& o) { cli::atoms_corpus(seeded, 50, 0.5, false, o); },
      [&](std::ostream& o) { cli::atoms_corpus(mixed, 20, 0.3, true, o); },
      [&](std::ostream& o) { cli::verify(mixed, "atoms", 10, o); },
      [&](std::ostream& o) { cli::counterexample_sweep(cli::RunConfig{}, "unit", 0.5, 5, o); },
  };
  std::size_t same = 0;
  for (const auto& c : commands) {
    setenv("VILENKIN_THREADS", "4", 1);
    const std::string a = capture(c);
    setenv("VILENKIN_THREADS", "1", 1);
    const std::string b = capture(c);
    if (a == b && !a.empty()) ++same;
  }
  unsetenv("VILENKIN_THREADS");
  return {same == commands.size(), std::to_string(same) + "/" + std::to_string(commands.size()) +
                                       " seeded commands byte-identical across runs and thread counts"};
}

}  // namespace

int main() {
  std::cout << "acceptance run, threads = " << thread_count() << std::endl;
  run(1, "Dirichlet kernel at M_n", 10, closed_forms);
  run(2, "dyadic Fejer kernel closed form", 10, gat);
  run(3, "identities", 60, identities);
  run(4, "Fejer kernel integrability", 0, fejer_integrability);
  run(5, "cylinder class sweeps", 0, class_sweeps);
  class_sweeps_non_dyadic();
  run(6, "atom tail stability", 300, atom_stability);
  run(7, "counterexample blow-up", 120, blowup);
  run(8, "Hardy norm scaling of the counterexample", 0, hardy_scaling);
  run(9, "transform quality", 0, transform_quality);
  run(10, "determinism", 0, determinism);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
