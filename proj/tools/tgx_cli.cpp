#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tgx/family.hpp"
#include "tgx/harness.hpp"
#include "tgx/scenario.hpp"
#include "tgx/scripts.hpp"
#include "tgx/simnet.hpp"
#include "tgx/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;

struct Overrides {
  std::optional<tgx::Tick> horizon;
  std::optional<std::uint64_t> seed;
};

tgx::Scenario load_with(const std::string& path, const Overrides& o) {
  tgx::Scenario s = tgx::load_scenario(path);
  if (o.horizon) s.horizon = *o.horizon;
  if (o.seed) s.seed = *o.seed;
  s.validate();
  return s;
}

int cmd_run(const std::string& scenario_path, const std::string& algo, const Overrides& o,
            const std::string& trace_path) {
  const tgx::Scenario s = load_with(scenario_path, o);
  const tgx::Trace trace = tgx::simulate(s, algo);
  if (!trace_path.empty()) {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) throw tgx::InputError("trace: cannot write '" + trace_path + "'");
    tgx::write_trace(out, trace);
  }
  const tgx::PropertyReport r = tgx::check_properties(trace, s);
  std::cout << "stabilization_tick: " << (r.stabilization_tick ? std::to_string(*r.stabilization_tick) : "none")
            << "\nfinal_graph: " << (r.final_graph ? r.final_graph->to_string() : "none") << '\n';
  return kExitOk;
}

int cmd_check(const std::string& trace_path, const std::string& scenario_path, const Overrides& o, bool json) {
  const tgx::Scenario s = load_with(scenario_path, o);
  const tgx::Trace trace = tgx::load_trace(trace_path);
  const tgx::PropertyReport r = tgx::check_properties(trace, s);
  std::cout << (json ? tgx::report_to_json(r) + "\n" : tgx::report_to_text(r));
  return r.all_pass() ? kExitOk : kExitPropertyFailure;
}

int cmd_family(const std::string& name, std::size_t n) {
  const tgx::FamilyName tag = tgx::parse_family_name(name);
  const tgx::GraphFamily f = tgx::generate_family(tag, n);
  std::cout << "family " << tgx::to_string(tag) << " n=" << n << " members=" << f.size() << '\n';
  for (const auto& g : f.members) std::cout << "  " << g.to_string() << '\n';
  const tgx::ClosureReport c = tgx::is_dicut_closed(f);
  if (c.closed) {
    std::cout << "dicut-closed\n";
  } else {
    const auto& w = *c.witness;
    std::cout << "not dicut-closed (" << c.violations << " violations)\nwitness: " << w.member.to_string()
              << " reduces to " << w.reduced.to_string() << " outside the family\n";
  }
  return kExitOk;
}

int cmd_counterexample(const std::string& kind, std::size_t flips, const std::string& out_path) {
  tgx::AdversaryScript script;
  if (kind == "pair") {
    script = tgx::pair_counterexample(flips);
  } else if (kind == "tree") {
    script = tgx::tree_nonexact_counterexample(flips);
  } else {
    throw tgx::ConfigError("kind: expected pair or tree, got '" + kind + "'");
  }
  tgx::save_scenario(script.scenario, out_path);
  std::cout << "wrote " << out_path << ": replay with --algo " << script.algo << ", expect at least "
            << script.min_alternations << " alternations at process " << script.watched << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timeliness graph extraction simulator"};
  app.require_subcommand(1);

  std::string scenario_path, trace_path, algo = "basic", family, kind, out_path;
  std::size_t n = 0, flips = 0;
  bool json = false;
  Overrides overrides;

  auto* run = app.add_subcommand("run", "Simulate a scenario and write its trace");
  run->add_option("--scenario", scenario_path, "Scenario file")->required();
  run->add_option("--algo", algo, "basic | efficient | strawman")->check(CLI::IsMember({"basic", "efficient", "strawman"}));
  run->add_option("--horizon", overrides.horizon, "Override the scenario horizon");
  run->add_option("--seed", overrides.seed, "Override the scenario seed");
  run->add_option("--trace", trace_path, "Trace output path");

  auto* check = app.add_subcommand("check", "Check a trace against its scenario");
  check->add_option("--trace", trace_path, "Trace file")->required();
  check->add_option("--scenario", scenario_path, "Scenario file")->required();
  check->add_option("--horizon", overrides.horizon, "Horizon override used for the run");
  check->add_option("--seed", overrides.seed, "Seed override used for the run");
  check->add_flag("--json", json, "Print the report as JSON");

  auto* fam = app.add_subcommand("family", "List a family and test dicut closure");
  fam->add_option("--family", family, "ASYNC, COMPLETE, STAR, TREE, RING, SC, BIC or PAIR")->required();
  fam->add_option("--n", n, "Number of processes")->required();

  auto* cex = app.add_subcommand("counterexample", "Write an adversary scenario");
  cex->add_option("--kind", kind, "pair | tree")->required();
  cex->add_option("--flips", flips, "Forced alternations")->required();
  cex->add_option("--out", out_path, "Scenario output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(scenario_path, algo, overrides, trace_path);
    if (*check) return cmd_check(trace_path, scenario_path, overrides, json);
    if (*fam) return cmd_family(family, n);
    return cmd_counterexample(kind, flips, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
