// Command-line front end for the experiment runners.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "twostep/twostep.hpp"

namespace {

using namespace twostep;

struct Options {
  ExperimentConfig cfg;
  std::uint32_t prime = 0;
  std::string format = "table";
  std::string input;
  std::string n_range = "4:6";
  std::string n0_range = "2:4";
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.cfg.n, "dimension of V");
  sub->add_option("--t", o.cfg.t, "number of forms");
  sub->add_option("--trials", o.cfg.trials, "number of trials");
  sub->add_option("--bound", o.cfg.bound, "entries are drawn from [-bound, bound]");
  sub->add_option("--prime", o.prime, "prime for finite-field oracles");
  sub->add_option("--seed", o.cfg.seed, "master seed");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "json", "csv"}));
  sub->add_option("--input", o.input, "form tuple JSON file used instead of random sampling");
  sub->add_option("--enum-cap", o.cfg.enum_cap, "largest subspace enumeration allowed");
  sub->add_option("--threads", o.cfg.threads, "worker threads");
  sub->add_option("--restarts", o.cfg.restarts, "greedy isotropic restarts");
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const std::size_t v = std::stoul(text);
      return {v, v};
    }
    return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError("bad range '" + text + "', expected lo:hi");
  }
}

int emit(const ExperimentReport& rep, const std::string& format) {
  if (format == "json")
    std::cout << rep.to_json().dump(2) << '\n';
  else if (format == "csv")
    std::cout << render_csv(rep);
  else
    std::cout << render_table(rep);
  return rep.consistent ? 0 : 1;
}

int emit_thresholds(const Options& o) {
  const auto [n_lo, n_hi] = parse_range(o.n_range);
  const auto [n0_lo, n0_hi] = parse_range(o.n0_range);
  const auto rows = emit_threshold_table(n_lo, n_hi, n0_lo, n0_hi);
  if (o.format == "json") {
    std::cout << threshold_table_json(rows).dump(2) << '\n';
  } else if (o.format == "csv") {
    std::cout << "n,n0,t0,generic_absence_below,guaranteed_at_or_above,corollary_bound\n";
    for (const auto& r : rows)
      std::cout << r.n << ',' << r.n0 << ',' << r.t0 << ',' << r.generic_absence_below.get_str() << ','
                << r.guaranteed_at_or_above.get_str() << ',' << (r.corollary ? r.corollary->get_str() : "") << '\n';
  } else {
    std::cout << "   n  n0  t0   absent below   present from   corollary\n";
    for (const auto& r : rows) {
      char line[128];
      std::snprintf(line, sizeof line, "%4zu %3zu %3zu %14s %14s %11s\n", r.n, r.n0, r.t0,
                    r.generic_absence_below.get_str().c_str(), r.guaranteed_at_or_above.get_str().c_str(),
                    r.corollary ? r.corollary->get_str().c_str() : "-");
      std::cout << line;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating form tuples, 2-step nilpotent Lie algebras and class-2 groups"};
  app.require_subcommand(1);
  Options o;

  auto* center_cmd = app.add_subcommand("center", "center dimension against the generic value");
  auto* abelian_cmd = app.add_subcommand("abelian", "common isotropic subspaces against bound_k");
  auto* ms_cmd = app.add_subcommand("ms", "surjections onto N_2(n0, t0)");
  auto* thresholds_cmd = app.add_subcommand("thresholds", "threshold table over ranges of n and n0");
  auto* plucker_cmd = app.add_subcommand("plucker", "Plucker relations and basis round trip");
  auto* group_cmd = app.add_subcommand("group-check", "group law, commutators and Mal'cev correspondence");
  auto* quaternion_cmd = app.add_subcommand("example-quaternion", "the quaternion form tuple");

  for (auto* sub : {center_cmd, abelian_cmd, ms_cmd, thresholds_cmd, plucker_cmd, group_cmd, quaternion_cmd})
    add_common(sub, o);
  ms_cmd->add_option("--n0", o.cfg.n0, "dimension of the target generating space");
  ms_cmd->add_option("--t0", o.cfg.t0, "number of target forms");
  ms_cmd->add_option("--strategy", o.cfg.strategy, "search strategy")
      ->check(CLI::IsMember({"exhaustive-fp", "randomized-q"}));
  ms_cmd->add_option("--search-trials", o.cfg.search_trials, "random subspaces per algebra (randomized-q)");
  thresholds_cmd->add_option("--n0", o.cfg.n0, "unused; see --n0-range");
  thresholds_cmd->add_option("--t0", o.cfg.t0, "unused; all admissible t0 are listed");
  thresholds_cmd->add_option("--n-range", o.n_range, "lo:hi");
  thresholds_cmd->add_option("--n0-range", o.n0_range, "lo:hi");
  plucker_cmd->add_option("--k", o.cfg.k, "subspace dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto* sub : app.get_subcommands())
      if (sub->count("--prime") > 0) o.cfg.prime = o.prime;
    if (!o.input.empty()) o.cfg.input = load_formtuple(o.input);
    if (thresholds_cmd->parsed()) return emit_thresholds(o);
    if (center_cmd->parsed()) o.cfg.kind = ExperimentKind::Center;
    if (abelian_cmd->parsed()) o.cfg.kind = ExperimentKind::Abelian;
    if (ms_cmd->parsed()) o.cfg.kind = ExperimentKind::Ms;
    if (plucker_cmd->parsed()) o.cfg.kind = ExperimentKind::Plucker;
    if (group_cmd->parsed()) o.cfg.kind = ExperimentKind::GroupCheck;
    if (quaternion_cmd->parsed()) o.cfg.kind = ExperimentKind::Quaternion;
    return emit(run_experiment(o.cfg), o.format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
