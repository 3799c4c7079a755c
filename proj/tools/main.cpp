#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using vilenkin::cli::json;

std::string config_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ",") + config_value(e);
    return s;
  }
  return v.dump();
}

// Fill options that were not given on the command line from the config object.
// Keys that match no option of the invoked command are an error.
void apply_config(CLI::App& app, const json& cfg) {
  std::vector<CLI::App*> path{&app};
  for (CLI::App* a = &app; !a->get_subcommands().empty();) {
    a = a->get_subcommands().front();
    path.push_back(a);
  }
  std::set<std::string> used;
  for (CLI::App* a : path) {
    for (CLI::Option* opt : a->get_options()) {
      const std::string name = opt->get_single_name();
      if (name == "config" || !cfg.contains(name)) continue;
      used.insert(name);
      if (opt->count() > 0) continue;
      const json& v = cfg[name];
      if (v.is_boolean() && !v.get<bool>()) continue;
      opt->add_result(config_value(v));
      opt->run_callback();
    }
  }
  for (const auto& [k, v] : cfg.items())
    if (!used.count(k)) throw vilenkin::cli::UsageError("config key '" + k + "' does not apply to this command");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = vilenkin::cli;
  CLI::App app{"Maximal operators of Riesz and Fejer means on Vilenkin groups"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string base_text = "2", out_path, format, config_path;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  auto* base_opt = app.add_option("--base", base_text, "moduli m_0,m_1,... (cycled to the depth)");
  auto* depth_opt = app.add_option("--depth", depth, "number of digits K");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", out_path, "write output to this file");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", config_path, "JSON file with defaults for any flag");

  auto* kernel = app.add_subcommand("kernel", "kernel tables")->require_subcommand(1);
  auto* dump = kernel->add_subcommand("dump", "dump D_n, K_n or L_n on G_m at level K");
  std::string which = "dirichlet", convention = "shifted";
  std::uint64_t n = 1;
  bool spectrum = false;
  dump->add_option("--which", which)->check(CLI::IsMember({"dirichlet", "fejer", "riesz"}));
  auto* n_opt = dump->add_option("--n", n, "kernel index (required)");
  dump->add_option("--convention", convention, "Fejer indexing: shifted (k = 1..n) or unshifted (k = 0..n-1)");
  dump->add_flag("--spectrum", spectrum, "dump Fourier coefficients instead of values");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  std::size_t max_A = 10;
  verify->add_option("suite", suite, "kernels, identities, lemmas or atoms (required)");
  verify->add_option("--max-A", max_A, "largest A for the dyadic Fejer closed form");

  auto* atoms = app.add_subcommand("atoms", "p-atom corpora")->require_subcommand(1);
  auto* corpus = atoms->add_subcommand("corpus", "generate random saturated p-atoms");
  std::size_t count = 100;
  double p = 0.5;
  corpus->add_option("--count", count);
  corpus->add_option("--p", p);

  auto* maximal = app.add_subcommand("maximal", "maximal operators")->require_subcommand(1);
  auto* table = maximal->add_subcommand("table", "H_p -> L_p ratios over an atom corpus");
  std::string op = "riesz", weight = "log", input;
  std::uint64_t n_max = 0;
  table->add_option("--op", op)->check(CLI::IsMember({"sigma", "riesz"}));
  table->add_option("--weight", weight, "unit, log, power_log:p, cond1:p or table:a,b,...");
  table->add_option("--p", p);
  table->add_option("--nmax", n_max, "0 means M_N of each atom");
  table->add_option("--input", input, "corpus JSON (required)");

  auto* ce = app.add_subcommand("counterexample", "necessity construction")->require_subcommand(1);
  auto* sweep = ce->add_subcommand("sweep", "blow-up table over k = 1..kmax");
  std::string phi = "unit";
  std::size_t k_max = 5;
  sweep->add_option("--phi", phi);
  sweep->add_option("--p", p);
  sweep->add_option("--kmax", k_max);

  auto* weights = app.add_subcommand("weight", "weight diagnostics")->require_subcommand(1);
  auto* trend = weights->add_subcommand("trend", "weight condition ratio on n = 2^1..2^emax");
  std::string condition = "cond55";
  unsigned e_max = 20;
  trend->add_option("--weight", weight);
  trend->add_option("--condition", condition, "cond55, cond66 or cond1");
  trend->add_option("--p", p);
  trend->add_option("--emax", e_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsage;
  }

  std::ostringstream out;
  int status = cli::kOk;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw cli::UsageError("cannot open config file '" + config_path + "'");
      json cfg;
      try {
        cfg = json::parse(in);
      } catch (const json::exception& e) {
        throw cli::UsageError(std::string("config is not valid JSON: ") + e.what());
      }
      if (!cfg.is_object()) throw cli::UsageError("config must be a JSON object");
      apply_config(app, cfg);
    }

    cli::RunConfig rc;
    rc.moduli = cli::parse_moduli(base_text);
    if (depth_opt->count()) rc.depth = depth;
    if (seed_opt->count()) rc.seed = seed;
    rc.format = format;

    // required values may come from the config, so they are checked after merging it
    if (*dump && n_opt->count() == 0) throw cli::UsageError("kernel dump: --n is required");
    if (*verify && suite.empty()) throw cli::UsageError("verify: a suite name is required");
    if (*table && input.empty()) throw cli::UsageError("maximal table: --input is required");

    if (*dump) status = cli::kernel_dump(rc, which, n, convention, spectrum, out);
    else if (*verify) status = cli::verify(rc, suite, max_A, out);
    else if (*corpus) status = cli::atoms_corpus(rc, count, p, base_opt->count() > 0, out);
    else if (*table) status = cli::maximal_table(rc, op, weight, p, n_max, input, out);
    else if (*sweep) status = cli::counterexample_sweep(rc, phi, p, k_max, out);
    else if (*trend) status = cli::weight_trend_table(rc, weight, condition, p, e_max, out);
  } catch (const cli::ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsage;
  }

  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return cli::kUsage;
    }
    f << out.str();
  }
  return status;
}
