#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "remote_vm/extraction.hpp"
#include "remote_vm/generators.hpp"
#include "remote_vm/rng.hpp"
#include "remote_vm/stats.hpp"

namespace remote_vm {

struct BipartiteSplit {
  std::size_t p1 = 25;
  std::size_t p2 = 25;
};

/// General topology of node_count vertices, reduced to a connected bipartite
/// subgraph of subgraph_size vertices before extraction.
struct InternetTopology {
  TopologyModel model;
  std::size_t node_count = 50;
  std::size_t subgraph_size = 30;
  int subgraph_attempts = default_subgraph_attempts;
};

using Scenario = std::variant<BipartiteSplit, InternetTopology>;

inline std::string scenario_tag(const Scenario& s) {
  if (auto* b = std::get_if<BipartiteSplit>(&s)) return "bipartite:" + std::to_string(b->p1) + "," + std::to_string(b->p2);
  return "internet:" + std::string(to_string(std::get<InternetTopology>(s).model.kind));
}

struct EdgeRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t step = 1;

  std::vector<std::size_t> values() const {
    std::vector<std::size_t> out;
    for (std::size_t m = lo; m <= hi; m += step) out.push_back(m);
    return out;
  }
};

struct SweepConfig {
  Scenario scenario = BipartiteSplit{};
  std::vector<int> n_values{2};
  EdgeRange m_range;
  int trials_per_point = 1;
  std::uint64_t base_seed = 0;
  ExtractionConfig extraction;  // n and seed are overridden per trial
  unsigned jobs = 1;
  bool record_runtime = false;  // wall-clock times make output non-reproducible
};

struct TrialRecord {
  std::size_t m = 0;
  int n = 2;
  int trial = 0;
  std::uint64_t seed = 0;
  std::size_t p1 = 0;  // partition sizes of the graph handed to extraction
  std::size_t p2 = 0;
  std::size_t r_tilde = 0;
  std::size_t r_g = 0;
  std::size_t deleted_count = 0;
  double runtime_ms = 0;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

struct PointSummary {
  std::size_t m = 0;
  int n = 2;
  std::size_t trials = 0;    // successful trials
  std::size_t failures = 0;  // excluded from the statistics
  Summary r_g;
  Summary r_tilde;
};

struct SweepReport {
  std::string scenario;
  std::vector<PointSummary> points;
  std::vector<TrialRecord> trials;  // m-major, then n, then trial index
};

inline std::uint64_t trial_seed(std::uint64_t base, const std::string& tag, std::size_t m, int n, int trial) {
  return derive_seed(base, {hash_tag(tag), m, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
}

/// Graph for one trial, drawn from the scenario's generator.
inline BipartiteGraph scenario_graph(const Scenario& s, std::size_t m, Rng& rng) {
  if (auto* b = std::get_if<BipartiteSplit>(&s)) return random_connected_bipartite(b->p1, b->p2, m, rng);
  const auto& t = std::get<InternetTopology>(s);
  auto general = internet_like_topology(t.model, t.node_count, m, rng);
  return bipartite_subgraph(general, t.subgraph_size, rng, t.subgraph_attempts);
}

inline TrialRecord run_trial(const SweepConfig& cfg, std::size_t m, int n, int trial) {
  TrialRecord rec;
  rec.m = m;
  rec.n = n;
  rec.trial = trial;
  rec.seed = trial_seed(cfg.base_seed, scenario_tag(cfg.scenario), m, n, trial);
  try {
    Rng rng(rec.seed);
    auto g = scenario_graph(cfg.scenario, m, rng);
    rec.p1 = g.size(Side::p1);
    rec.p2 = g.size(Side::p2);
    ExtractionConfig ec = cfg.extraction;
    ec.n = n;
    ec.seed = derive_seed(rec.seed, {1});
    auto start = std::chrono::steady_clock::now();
    auto result = remote_extraction(g, ec);
    auto stop = std::chrono::steady_clock::now();
    rec.r_tilde = result.seed_volume;
    rec.r_g = result.volume;
    rec.deleted_count = result.deleted_count();
    if (cfg.record_runtime) rec.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  } catch (const Error& e) {
    rec.status = std::string(to_string(e.kind()));
  }
  return rec;
}

namespace detail {

inline void validate(const SweepConfig& cfg) {
  if (cfg.trials_per_point < 1) throw Error(ErrorKind::invalid_argument, "trials per point must be >= 1");
  if (cfg.n_values.empty()) throw Error(ErrorKind::invalid_argument, "no GHZ masses requested");
  for (int n : cfg.n_values) require_mass(n);
  if (cfg.m_range.step == 0 || cfg.m_range.lo > cfg.m_range.hi) {
    throw Error(ErrorKind::invalid_argument, "edge range must satisfy lo <= hi and step >= 1");
  }
  if (auto* b = std::get_if<BipartiteSplit>(&cfg.scenario)) {
    if (b->p1 == 0 || b->p2 == 0) throw Error(ErrorKind::invalid_argument, "partition sizes must be >= 1");
    auto [lo, hi] = connected_bipartite_bounds(b->p1, b->p2);
    if (cfg.m_range.lo < lo || cfg.m_range.hi > hi) {
      throw Error(ErrorKind::edge_count_out_of_range, "edge range [" + std::to_string(cfg.m_range.lo) + ", " +
                                                          std::to_string(cfg.m_range.hi) + "] outside [" +
                                                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
}

}  // namespace detail

/// Monte-Carlo sweep over edge counts and GHZ masses. Every trial derives its
/// own seed from (base seed, scenario, m, n, trial), so the report does not
/// depend on the number of worker threads.
inline SweepReport run_sweep(const SweepConfig& cfg) {
  detail::validate(cfg);
  struct Task {
    std::size_t m;
    int n;
    int trial;
  };
  std::vector<Task> tasks;
  for (auto m : cfg.m_range.values())
    for (int n : cfg.n_values)
      for (int t = 0; t < cfg.trials_per_point; ++t) tasks.push_back({m, n, t});

  SweepReport report;
  report.scenario = scenario_tag(cfg.scenario);
  report.trials.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < tasks.size(); i = next++) report.trials[i] = run_trial(cfg, tasks[i].m, tasks[i].n, tasks[i].trial);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < std::max(1u, cfg.jobs); ++j) pool.emplace_back(worker);
    worker();
  }

  const auto per_point = static_cast<std::size_t>(cfg.trials_per_point);
  for (std::size_t first = 0; first < report.trials.size(); first += per_point) {
    PointSummary p;
    p.m = report.trials[first].m;
    p.n = report.trials[first].n;
    std::vector<double> rg, rt;
    for (std::size_t i = first; i < first + per_point; ++i) {
      const auto& rec = report.trials[i];
      if (!rec.ok()) {
        ++p.failures;
        continue;
      }
      rg.push_back(static_cast<double>(rec.r_g));
      rt.push_back(static_cast<double>(rec.r_tilde));
    }
    p.trials = rg.size();
    if (!rg.empty()) {
      p.r_g = aggregate(rg);
      p.r_tilde = aggregate(rt);
    }
    report.points.push_back(p);
  }
  return report;
}

/// Same sweep; the report pairs seed-volume and final-volume statistics per
/// point (see comparison_csv).
inline SweepReport compare_seed_vs_final(const SweepConfig& cfg) { return run_sweep(cfg); }

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline std::string model_name(const Scenario& s) {
  if (std::holds_alternative<BipartiteSplit>(s)) return "bipartite";
  return std::string(to_string(std::get<InternetTopology>(s).model.kind));
}

}  // namespace detail

inline std::string trials_csv(const SweepReport& report, const SweepConfig& cfg) {
  std::ostringstream out;
  out << "scenario,model,p1,p2,m,n,trial,seed,r_tilde,r_g,deleted_count,runtime_ms,status\n";
  const auto scenario = detail::csv_field(report.scenario);
  const auto model = detail::model_name(cfg.scenario);
  for (const auto& r : report.trials) {
    out << scenario << ',' << model << ',' << r.p1 << ',' << r.p2 << ',' << r.m << ',' << r.n << ',' << r.trial << ','
        << r.seed << ',' << r.r_tilde << ',' << r.r_g << ',' << r.deleted_count << ','
        << (cfg.record_runtime && r.ok() ? detail::fixed(r.runtime_ms) : "") << ',' << r.status << '\n';
  }
  return out.str();
}

inline std::string aggregate_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "scenario,m,n,trials,mean_r,ci95_lo,ci95_hi,min_r,max_r,mean_r_tilde\n";
  const auto scenario = detail::csv_field(report.scenario);
  for (const auto& p : report.points) {
    out << scenario << ',' << p.m << ',' << p.n << ',' << p.trials << ',' << detail::fixed(p.r_g.mean) << ','
        << detail::fixed(p.r_g.ci95_low) << ',' << detail::fixed(p.r_g.ci95_high) << ',' << detail::fixed(p.r_g.min)
        << ',' << detail::fixed(p.r_g.max) << ',' << detail::fixed(p.r_tilde.mean) << '\n';
  }
  return out.str();
}

/// Seed volume against final volume per point, with the seed volume's
/// min-max band.
inline std::string comparison_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "scenario,m,n,trials,mean_r,ci95_lo,ci95_hi,mean_r_tilde,ci95_lo_tilde,ci95_hi_tilde,min_r_tilde,max_r_tilde\n";
  const auto scenario = detail::csv_field(report.scenario);
  for (const auto& p : report.points) {
    out << scenario << ',' << p.m << ',' << p.n << ',' << p.trials << ',' << detail::fixed(p.r_g.mean) << ','
        << detail::fixed(p.r_g.ci95_low) << ',' << detail::fixed(p.r_g.ci95_high) << ','
        << detail::fixed(p.r_tilde.mean) << ',' << detail::fixed(p.r_tilde.ci95_low) << ','
        << detail::fixed(p.r_tilde.ci95_high) << ',' << detail::fixed(p.r_tilde.min) << ','
        << detail::fixed(p.r_tilde.max) << '\n';
  }
  return out.str();
}

inline nlohmann::json summary_json(const SweepReport& report) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : report.points) {
    const auto total = p.trials + p.failures;
    points.push_back({{"m", p.m},
                      {"n", p.n},
                      {"trials", p.trials},
                      {"failures", p.failures},
                      {"failure_rate", total ? static_cast<double>(p.failures) / static_cast<double>(total) : 0.0},
                      {"mean_r", p.r_g.mean},
                      {"ci95_lo", p.r_g.ci95_low},
                      {"ci95_hi", p.r_g.ci95_high},
                      {"min_r", p.r_g.min},
                      {"max_r", p.r_g.max},
                      {"mean_r_tilde", p.r_tilde.mean}});
  }
  return {{"scenario", report.scenario}, {"points", std::move(points)}};
}

}  // namespace remote_vm
