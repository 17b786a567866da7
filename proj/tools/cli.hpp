#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "remote_vm/remote_vm.hpp"

namespace remote_vm::cli {

enum ExitCode : int {
  ok = 0,
  failure = 1,
  usage = 2,
  degenerate = 3,
  too_large = 4,
  out_of_range = 5,
  rejected = 6,
};

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::degenerate_graph:
    case ErrorKind::empty_graph:
    case ErrorKind::no_star_vertex:
      return degenerate;
    case ErrorKind::instance_too_large:
      return too_large;
    case ErrorKind::edge_count_out_of_range:
    case ErrorKind::unachievable_density:
      return out_of_range;
    case ErrorKind::no_bipartite_subgraph:
    case ErrorKind::iteration_cap_exceeded:
      return failure;
    default:
      return usage;
  }
}

inline const std::map<std::string, HostPartition> host_names{
    {"auto", HostPartition::automatic}, {"p1", HostPartition::p1}, {"p2", HostPartition::p2}, {"both", HostPartition::both}};
inline const std::map<std::string, StarPolicy> star_policy_names{{"random", StarPolicy::random},
                                                                 {"min-remote-set", StarPolicy::min_remote_set}};
inline const std::map<std::string, CandidatePolicy> candidate_names{
    {"fewest-deletions", CandidatePolicy::fewest_deletions}, {"uniform", CandidatePolicy::uniform}};
inline const std::map<std::string, Side> side_names{{"p1", Side::p1}, {"p2", Side::p2}};

inline Scenario parse_scenario(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::invalid_argument, "scenario \"" + text + "\" lacks a ':'");
  auto kind = text.substr(0, colon);
  auto rest = text.substr(colon + 1);
  if (kind == "bipartite") {
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::invalid_argument, "expected bipartite:P1,P2");
    try {
      return BipartiteSplit{std::stoul(rest.substr(0, comma)), std::stoul(rest.substr(comma + 1))};
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::invalid_argument, "bad partition sizes in \"" + text + "\"");
    }
  }
  if (kind == "internet") {
    InternetTopology t;
    t.model.kind = topology_from_string(rest);
    if (t.model.kind == TopologyKind::random_bipartite) {
      throw Error(ErrorKind::invalid_argument, "use internet:as|www|ppi or bipartite:P1,P2");
    }
    return t;
  }
  throw Error(ErrorKind::invalid_argument, "unknown scenario kind \"" + kind + "\"");
}

inline EdgeRange parse_edge_range(const std::string& text) {
  std::vector<std::size_t> parts;
  std::size_t start = 0;
  try {
    while (true) {
      auto colon = text.find(':', start);
      parts.push_back(std::stoul(text.substr(start, colon - start)));
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::invalid_argument, "edge range \"" + text + "\" is not lo:hi:step");
  }
  if (parts.size() == 2) parts.push_back(1);
  if (parts.size() != 3) throw Error(ErrorKind::invalid_argument, "edge range \"" + text + "\" is not lo:hi:step");
  return {parts[0], parts[1], parts[2]};
}

// Whole connected range in 25 points for bipartite splits, the sparse regime
// where 30-vertex bipartite subgraphs exist for 50-node topologies otherwise.
inline EdgeRange default_edge_range(const Scenario& s) {
  if (auto* b = std::get_if<BipartiteSplit>(&s)) {
    auto [lo, hi] = connected_bipartite_bounds(b->p1, b->p2);
    return {lo, hi, std::max<std::size_t>(1, (hi - lo) / 24)};
  }
  return {49, 129, 10};
}

inline std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, Streams io) {
  if (seed) return *seed;
  auto s = fresh_seed();
  io.out << "seed=" << s << "\n";
  return s;
}

// --- extract ---------------------------------------------------------------

struct ExtractArgs {
  std::string input;
  int n = 2;
  std::optional<std::uint64_t> seed;
  int restarts = 1;
  HostPartition host = HostPartition::automatic;
  StarPolicy star_policy = StarPolicy::random;
  CandidatePolicy candidates = CandidatePolicy::fewest_deletions;
  std::string out;
};

inline int cmd_extract(const ExtractArgs& a, Streams io) {
  auto g = load_bipartite(a.input);
  ExtractionConfig cfg;
  cfg.n = a.n;
  cfg.seed = resolve_seed(a.seed, io);
  cfg.restarts = a.restarts;
  cfg.host = a.host;
  cfg.star_policy = a.star_policy;
  cfg.candidate_policy = a.candidates;
  auto r = remote_extraction(g, cfg);
  io.out << "r_g(" << a.n << ")=" << r.volume << "\n";
  io.out << "seed_volume=" << r.seed_volume << "\n";
  io.out << "deleted=" << r.deleted_count() << " host=P" << number(r.host) << "\n";
  if (!a.out.empty()) write_file(a.out, dump_result(r));
  return ok;
}

// --- oracle ----------------------------------------------------------------

struct OracleArgs {
  std::string input;
  int n = 2;
  Side side = Side::p1;
  std::size_t cap = default_enumeration_cap;
};

inline std::string describe(const OracleResult& r) {
  std::string s = std::to_string(r.best_size);
  if (r.best_size >= 2) s += " " + format_set(r.best_family);
  return s;
}

inline int cmd_oracle(const OracleArgs& a, Streams io) {
  auto g = load_bipartite(a.input);
  auto one = max_condition_I_family(g, a.n, a.side, a.cap);
  auto two = max_condition_II_family(g, a.n, a.side, a.cap);
  io.out << "I: " << describe(one) << "; II: " << describe(two) << "\n";
  return ok;
}

// --- generate --------------------------------------------------------------

struct GenerateArgs {
  std::string model = "bipartite";
  std::optional<std::size_t> p1, p2, nodes;
  std::size_t m = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> subgraph;
  std::string format = "json";
  std::string out;
};

inline int cmd_generate(const GenerateArgs& a, Streams io) {
  auto kind = topology_from_string(a.model);
  const bool bipartite = kind == TopologyKind::random_bipartite;
  if (bipartite && (!a.p1 || !a.p2)) throw Error(ErrorKind::invalid_argument, "--model bipartite needs --p1 and --p2");
  if (!bipartite && !a.nodes) throw Error(ErrorKind::invalid_argument, "--model " + a.model + " needs --nodes");
  if (bipartite && a.subgraph) throw Error(ErrorKind::invalid_argument, "--subgraph applies to general topologies only");
  if (a.format != "json" && a.format != "edges") throw Error(ErrorKind::invalid_argument, "--format is json or edges");
  if (a.format == "edges" && !bipartite && !a.subgraph) {
    throw Error(ErrorKind::invalid_argument, "edge-list output needs a bipartite graph (use --subgraph)");
  }

  Rng rng(resolve_seed(a.seed, io));
  std::string text;
  std::size_t edges = 0;
  if (bipartite) {
    auto g = random_connected_bipartite(*a.p1, *a.p2, a.m, rng);
    edges = g.edge_count();
    text = a.format == "json" ? to_json(g).dump(2) + "\n" : to_edge_list(g);
  } else {
    TopologyModel model;
    model.kind = kind;
    auto general = internet_like_topology(model, *a.nodes, a.m, rng);
    if (a.subgraph) {
      auto g = bipartite_subgraph(general, *a.subgraph, rng);
      edges = g.edge_count();
      text = a.format == "json" ? to_json(g).dump(2) + "\n" : to_edge_list(g);
    } else {
      edges = general.edge_count();
      text = to_json(general).dump(2) + "\n";
    }
  }
  if (a.out.empty()) {
    io.out << text;
  } else {
    write_file(a.out, text);
    io.out << "wrote " << a.out << " (" << edges << " edges)\n";
  }
  return ok;
}

// --- sweep / compare -------------------------------------------------------

struct SweepArgs {
  std::string scenario = "bipartite:25,25";
  std::vector<int> n{2};
  std::string m_range;
  int trials = 100;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  unsigned jobs = 1;
  int restarts = 1;
  HostPartition host = HostPartition::automatic;
  StarPolicy star_policy = StarPolicy::random;
  CandidatePolicy candidates = CandidatePolicy::fewest_deletions;
  std::size_t nodes = 50;
  std::size_t subgraph_size = 30;
  bool record_runtime = false;
};

inline std::string default_out_dir() {
  if (const char* env = std::getenv("REMOTE_VM_OUT_DIR"); env && *env) return env;
  return ".";
}

inline int cmd_sweep(const SweepArgs& a, bool compare, Streams io) {
  SweepConfig cfg;
  cfg.scenario = parse_scenario(a.scenario);
  if (auto* t = std::get_if<InternetTopology>(&cfg.scenario)) {
    t->node_count = a.nodes;
    t->subgraph_size = a.subgraph_size;
  }
  cfg.n_values = a.n;
  cfg.m_range = a.m_range.empty() ? default_edge_range(cfg.scenario) : parse_edge_range(a.m_range);
  cfg.trials_per_point = a.trials;
  cfg.jobs = a.jobs;
  cfg.record_runtime = a.record_runtime;
  cfg.extraction.restarts = a.restarts;
  cfg.extraction.host = a.host;
  cfg.extraction.star_policy = a.star_policy;
  cfg.extraction.candidate_policy = a.candidates;
  detail::validate(cfg);
  cfg.base_seed = resolve_seed(a.seed, io);

  auto report = run_sweep(cfg);
  std::filesystem::path dir = a.out_dir.empty() ? default_out_dir() : a.out_dir;
  std::filesystem::create_directories(dir);
  write_file((dir / "trials.csv").string(), trials_csv(report, cfg));
  write_file((dir / "aggregate.csv").string(), aggregate_csv(report));
  write_file((dir / "summary.json").string(), summary_json(report).dump(2) + "\n");
  if (compare) write_file((dir / "comparison.csv").string(), comparison_csv(report));

  for (const auto& p : report.points) {
    io.out << "m=" << p.m << " n=" << p.n << " trials=" << p.trials << " mean r_g=" << detail::fixed(p.r_g.mean);
    if (compare) io.out << " mean r_tilde=" << detail::fixed(p.r_tilde.mean);
    if (p.failures) io.out << " failures=" << p.failures;
    io.out << "\n";
  }
  io.out << "wrote " << dir.string() << "\n";
  return ok;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string graph;
  std::string result;
};

inline int cmd_verify(const VerifyArgs& a, Streams io) {
  auto g = load_bipartite(a.graph);
  auto r = parse_result(read_file(a.result));
  auto verdict = verify_result(g, r);
  if (!verdict) {
    io.err << "verification failed: " << verdict.reason << "\n";
    return rejected;
  }
  io.out << "ok: r_g(" << r.n << ")=" << r.volume << "\n";
  return ok;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Streams io{out, err};
  CLI::App app{"Remote GHZ and EPR extraction on two-colorable graph states"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract remote GHZ states from a bipartite graph");
  extract->add_option("input", ex.input, "Graph file (JSON or edge list)")->required();
  extract->add_option("--n", ex.n, "GHZ mass")->check(CLI::Range(2, 1 << 20));
  extract->add_option("--seed", ex.seed);
  extract->add_option("--restarts", ex.restarts)->check(CLI::PositiveNumber);
  extract->add_option("--partition", ex.host)->transform(CLI::CheckedTransformer(host_names));
  extract->add_option("--policy", ex.star_policy, "Star repair policy")
      ->transform(CLI::CheckedTransformer(star_policy_names));
  extract->add_option("--candidates", ex.candidates)->transform(CLI::CheckedTransformer(candidate_names));
  extract->add_option("--out", ex.out, "Write the result document here");

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "Exact maximum Condition I and II families");
  oracle->add_option("input", orc.input)->required();
  oracle->add_option("--n", orc.n)->check(CLI::Range(2, 1 << 20));
  oracle->add_option("--partition", orc.side)->transform(CLI::CheckedTransformer(side_names));
  oracle->add_option("--cap", orc.cap, "Largest number of non-star vertices to enumerate");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a random graph");
  generate->add_option("--model", gen.model)->check(CLI::IsMember({"bipartite", "as", "www", "ppi"}));
  generate->add_option("--p1", gen.p1);
  generate->add_option("--p2", gen.p2);
  generate->add_option("--nodes", gen.nodes);
  generate->add_option("--m", gen.m, "Edge count")->required();
  generate->add_option("--seed", gen.seed);
  generate->add_option("--subgraph", gen.subgraph, "Reduce a general topology to a bipartite subgraph of this size");
  generate->add_option("--format", gen.format)->check(CLI::IsMember({"json", "edges"}));
  generate->add_option("--out", gen.out);

  SweepArgs sw;
  auto add_sweep_options = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", sw.scenario, "bipartite:P1,P2 or internet:as|www|ppi");
    cmd->add_option("--n", sw.n, "GHZ masses")->delimiter(',')->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--m-range", sw.m_range, "lo:hi:step");
    cmd->add_option("--trials", sw.trials)->check(CLI::PositiveNumber);
    cmd->add_option("--seed", sw.seed);
    cmd->add_option("--out-dir", sw.out_dir, "Defaults to $REMOTE_VM_OUT_DIR or the working directory");
    cmd->add_option("--jobs", sw.jobs)->check(CLI::PositiveNumber);
    cmd->add_option("--restarts", sw.restarts)->check(CLI::PositiveNumber);
    cmd->add_option("--partition", sw.host)->transform(CLI::CheckedTransformer(host_names));
    cmd->add_option("--policy", sw.star_policy)->transform(CLI::CheckedTransformer(star_policy_names));
    cmd->add_option("--candidates", sw.candidates)->transform(CLI::CheckedTransformer(candidate_names));
    cmd->add_option("--nodes", sw.nodes, "Topology size for internet scenarios");
    cmd->add_option("--subgraph-size", sw.subgraph_size, "Bipartite subgraph size for internet scenarios");
    cmd->add_flag("--record-runtime", sw.record_runtime, "Fill runtime_ms (output no longer reproducible)");
  };
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over edge counts");
  add_sweep_options(sweep);
  auto* compare = app.add_subcommand("compare", "Sweep that also reports seed volume against final volume");
  add_sweep_options(compare);

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Re-check a result document against its graph");
  verify->add_option("--graph", ver.graph)->required();
  verify->add_option("--result", ver.result)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*extract) return cmd_extract(ex, io);
    if (*oracle) return cmd_oracle(orc, io);
    if (*generate) return cmd_generate(gen, io);
    if (*sweep) return cmd_sweep(sw, false, io);
    if (*compare) return cmd_sweep(sw, true, io);
    if (*verify) return cmd_verify(ver, io);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace remote_vm::cli
