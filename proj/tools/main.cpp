#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fillinglab/scenarios.hpp"

namespace fl = fillinglab;

namespace {

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Scratch for CLI bindings; only flags the user passed override the config.
struct Cli {
  std::string config, out;
  int n = 2;
  long k = 4;
  std::string epsilon;
  int rank = 2, q = 2, radius = 8;
  unsigned long samples = 100;
  std::uint64_t seed = 1;
  int obstruction_entries = 100, obstruction_max_len = 6;
  std::vector<std::string> u, v;
  std::string report_path;
};

void add_common(CLI::App* cmd, Cli& cli) {
  cmd->add_option("--config", cli.config,
                  "JSON config file (schema of the report's input block)");
  cmd->add_option("--out", cli.out, "write the report here instead of stdout");
  cmd->add_option("--seed", cli.seed, "RNG seed echoed in the report");
}

fl::ScenarioConfig build_config(const std::string& arena, const Cli& cli,
                                CLI::App* cmd) {
  fl::ScenarioConfig cfg;
  cfg.arena = arena;
  if (cmd->count("--config") > 0) {
    fl::Json j = fl::Json::parse(read_file(cli.config), nullptr, false);
    if (j.is_discarded())
      throw fl::config_error(cli.config + " is not valid JSON");
    cfg = fl::ScenarioConfig::from_json(j);
    if (cfg.arena != arena)
      throw fl::config_error("config arena '" + cfg.arena +
                             "' does not match subcommand '" + arena + "'");
  }
  auto passed = [&](const std::string& name) {
    return cmd->get_option_no_throw(name) != nullptr && cmd->count(name) > 0;
  };
  if (passed("--n")) cfg.n = cli.n;
  if (passed("--k")) cfg.k = cli.k;
  if (passed("--epsilon")) {
    cfg.epsilon = fl::rat_from_string(cli.epsilon);
    cfg.epsilon_set = true;
  }
  if (passed("--rank")) cfg.rank = cli.rank;
  if (passed("--q")) cfg.q = cli.q;
  if (passed("--radius")) cfg.radius = cli.radius;
  if (passed("--samples")) cfg.samples = cli.samples;
  if (passed("--seed")) cfg.seed = cli.seed;
  if (passed("--obstruction-entries"))
    cfg.obstruction_entries = cli.obstruction_entries;
  if (passed("--obstruction-max-len"))
    cfg.obstruction_max_len = cli.obstruction_max_len;
  if (passed("--u")) cfg.u_prefixes = cli.u;
  if (passed("--v")) cfg.v_prefixes = cli.v;
  cfg.validate();
  return cfg;
}

int run(const std::string& arena, const Cli& cli, CLI::App* cmd) {
  fl::ScenarioConfig cfg = build_config(arena, cli, cmd);
  fl::Json report = fl::run_scenario(cfg);
  write_out(cli.out, fl::report_to_string(report));
  return fl::exit_code_for_report(report);
}

int run_recheck(const Cli& cli) {
  fl::Json report = fl::report_from_string(read_file(cli.report_path));
  fl::RecheckResult res = fl::recheck_certificate(report);
  if (res.ok) {
    std::cout << "recheck: ok\n";
    return 0;
  }
  std::cout << "recheck: FAILED\n";
  for (const std::string& f : res.failures) std::cout << "  " << f << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact filling witnesses, obstructions and certificate rechecks "
      "for boundary actions"};
  app.require_subcommand(1);
  Cli cli;

  CLI::App* projective = app.add_subcommand(
      "projective", "n-filling witness for the integer matrix action on "
                    "projective (n-1)-space");
  projective->add_option("--n", cli.n, "ambient dimension (>= 2)");
  projective->add_option("--k", cli.k, "generator parameter (>= 4)");
  projective->add_option("--epsilon", cli.epsilon,
                         "target neighborhood size, a rational like 1/10");
  projective->add_option("--radius", cli.radius, "steering search radius");
  projective->add_option("--samples", cli.samples, "spot-check sample count");
  projective->add_option("--obstruction-entries", cli.obstruction_entries,
                         "random translate tuples for the obstruction");
  projective->add_option("--obstruction-max-len", cli.obstruction_max_len,
                         "word length bound for obstruction translates");
  add_common(projective, cli);

  CLI::App* tree = app.add_subcommand(
      "tree", "2-filling witness for the free group action on its boundary");
  tree->add_option("--rank", cli.rank, "free group rank (2..8)");
  tree->add_option("--radius", cli.radius, "fallback pair search radius");
  tree->add_option("--u", cli.u, "cylinder prefixes of the first clopen set");
  tree->add_option("--v", cli.v, "cylinder prefixes of the second clopen set");
  add_common(tree, cli);

  CLI::App* plane = app.add_subcommand(
      "plane", "opposition combinatorics of the flags of PG(2,q)");
  plane->add_option("--q", cli.q, "plane order (prime)");
  add_common(plane, cli);

  CLI::App* constants = app.add_subcommand(
      "constants", "exact audit of the small-element constant chain");
  constants->add_option("--n", cli.n, "ambient dimension (>= 2)");
  constants->add_option("--epsilon", cli.epsilon,
                        "audit one epsilon instead of the default grid");
  add_common(constants, cli);

  CLI::App* recheck = app.add_subcommand(
      "recheck", "independently re-verify a report's certificates");
  recheck->add_option("report", cli.report_path, "report file, - for stdin")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (app.got_subcommand(projective)) return run("projective", cli, projective);
    if (app.got_subcommand(tree)) return run("tree", cli, tree);
    if (app.got_subcommand(plane)) return run("plane", cli, plane);
    if (app.got_subcommand(constants)) return run("constants", cli, constants);
    return run_recheck(cli);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
