#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "remote_vm/conditions.hpp"
#include "remote_vm/graph.hpp"
#include "remote_vm/rng.hpp"

namespace remote_vm {

enum class HostPartition { automatic, p1, p2, both };

/// How the expansion loop picks among candidates that overlap current members.
enum class CandidatePolicy {
  fewest_deletions,  // net gain before swaps, then smallest overlap, then smallest id
  uniform,
};

struct ExtractionConfig {
  int n = 2;
  std::uint64_t seed = 0;
  int restarts = 1;
  HostPartition host = HostPartition::automatic;
  StarPolicy star_policy = StarPolicy::random;
  CandidatePolicy candidate_policy = CandidatePolicy::fewest_deletions;
};

struct SeedFamilies {
  VertexSet a_g;  // meets Condition I
  VertexSet b_g;  // meets Condition II, or empty
};

/// Output of one candidate search over the current member set.
struct CandidateReport {
  VertexSet candidates;
  std::map<VertexId, VertexSet> a_map;   // candidate -> overlapping members, for admissible candidates
  std::map<VertexId, VertexSet> abar2a;  // candidate -> members whose remote set it covers
  std::map<VertexId, VertexSet> b2a;     // candidate -> members whose remote set it meets
};

enum class StepKind { star_repair, seed_a, seed_b, direct_add, overlap_add, swap, guard_reject };

inline std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::star_repair: return "star_repair";
    case StepKind::seed_a: return "seed_a";
    case StepKind::seed_b: return "seed_b";
    case StepKind::direct_add: return "direct_add";
    case StepKind::overlap_add: return "overlap_add";
    case StepKind::swap: return "swap";
    case StepKind::guard_reject: return "guard_reject";
  }
  return "unknown";
}

struct TraceStep {
  StepKind kind;
  std::optional<VertexId> focus;
  VertexSet removed;
  VertexSet members_after;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct GhzGroup {
  VertexId member;
  std::vector<VertexId> partners;

  friend bool operator==(const GhzGroup&, const GhzGroup&) = default;
};

struct ExtractionResult {
  int n = 2;
  VertexSet members;
  std::size_t volume = 0;
  std::size_t seed_volume = 0;
  std::vector<GhzGroup> ghz_groups;
  BipartiteGraph final_graph;
  std::vector<TraceStep> trace;
  Side host = Side::p1;
  int restart = 0;

  std::size_t deleted_count() const {
    std::size_t total = 0;
    for (const auto& step : trace) total += step.removed.size();
    return total;
  }

  friend bool operator==(const ExtractionResult&, const ExtractionResult&) = default;
};

namespace detail {

inline Side host_side_of(const BipartiteGraph& g, const VertexSet& members, std::optional<Side> hint) {
  if (members.empty()) {
    if (!hint) throw Error(ErrorKind::invalid_argument, "host partition unknown for an empty member set");
    return *hint;
  }
  Side s = common_side(g, members);
  if (hint && *hint != s) throw Error(ErrorKind::mixed_partition, "members are not in the requested partition");
  return s;
}

inline void require_condition_I(const BipartiteGraph& g, const VertexSet& members, int n) {
  if (!check_condition_I(g, members, n)) {
    throw Error(ErrorKind::invalid_members, "member set " + format_set(members) + " violates Condition I");
  }
}

}  // namespace detail

/// Greedy Condition I / Condition II families over two independent random
/// permutations of the non-star vertices of `side`.
inline SeedFamilies seed_families(const BipartiteGraph& g, int n, Side side, Rng& rng) {
  detail::require_mass(n);
  if (!has_stars_in_both(g)) throw Error(ErrorKind::no_star_vertex, "seeding needs a star in both partitions");

  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < g.size(side); ++i)
    if (!g.neighbor_mask_at(side, i).all()) pool.push_back(i);
  std::vector<Bitset> masks(g.size(side));
  for (auto i : pool) masks[i] = ~g.neighbor_mask_at(side, i);

  auto order_a = pool;
  std::shuffle(order_a.begin(), order_a.end(), rng);
  auto order_b = pool;
  std::shuffle(order_b.begin(), order_b.end(), rng);

  SeedFamilies out;
  Bitset covered(g.size(opposite(side)));
  for (auto i : order_a) {
    if (masks[i].count() < detail::need(n) || masks[i].intersects(covered)) continue;
    covered |= masks[i];
    out.a_g.insert(g.at(side, i));
  }

  // Condition II needs a pair to start from: take the first valid pair in
  // permutation order, then extend in order.
  std::vector<Bitset> family;
  std::vector<std::size_t> chosen;
  for (std::size_t x = 0; x < order_b.size() && chosen.empty(); ++x) {
    for (std::size_t y = x + 1; y < order_b.size(); ++y) {
      std::vector<Bitset> pair{masks[order_b[x]], masks[order_b[y]]};
      if (detail::unique_intersection(pair, n)) {
        chosen = {order_b[x], order_b[y]};
        family = std::move(pair);
        break;
      }
    }
  }
  if (!chosen.empty()) {
    for (auto i : order_b) {
      if (std::ranges::find(chosen, i) != chosen.end()) continue;
      family.push_back(masks[i]);
      if (detail::unique_intersection(family, n)) {
        chosen.push_back(i);
      } else {
        family.pop_back();
      }
    }
    for (auto i : chosen) out.b_g.insert(g.at(side, i));
  }
  return out;
}

/// Candidate search around the current members (all in `side`).
inline CandidateReport find_a(const BipartiteGraph& g, int n, const VertexSet& members, Side side) {
  detail::require_mass(n);
  detail::host_side_of(g, members, side);
  detail::require_condition_I(g, members, n);

  std::map<VertexId, Bitset> member_masks;
  Bitset covered(g.size(opposite(side)));
  for (auto m : members) {
    auto mask = remote_mask(g, m);
    covered |= mask;
    member_masks.emplace(m, std::move(mask));
  }

  CandidateReport report;
  std::vector<std::pair<VertexId, Bitset>> cands;
  for (std::size_t i = 0; i < g.size(side); ++i) {
    VertexId v = g.at(side, i);
    if (members.contains(v)) continue;
    Bitset mask = ~g.neighbor_mask_at(side, i);
    if (mask.none() || mask.count() < detail::need(n) || mask.is_subset_of(covered)) continue;
    report.candidates.insert(v);
    cands.emplace_back(v, std::move(mask));
  }

  for (const auto& [v, mask] : cands) {
    VertexSet covers, meets;
    for (const auto& [w, wmask] : member_masks) {
      if (wmask.is_subset_of(mask)) covers.insert(w);
      if (wmask.intersects(mask)) meets.insert(w);
    }
    bool admissible = covers.size() <= 1;
    for (auto k : meets) {
      if (!admissible) break;
      if (covers.contains(k)) continue;
      std::vector<Bitset> pair{mask, member_masks.at(k)};
      admissible = detail::disjoint_remote_sets(pair, n) || detail::unique_intersection(pair, n).has_value();
    }
    if (admissible) report.a_map.emplace(v, meets);
    report.abar2a.emplace(v, std::move(covers));
    report.b2a.emplace(v, std::move(meets));
  }
  return report;
}

struct Expansion {
  BipartiteGraph graph;
  VertexSet members;
  std::vector<TraceStep> trace;
};

/// Grows a Condition I member set: direct additions first, otherwise an
/// overlapping candidate is admitted by deleting its overlap with the union
/// of member remote sets (swapping out the single covered member, if any).
/// A tentative update is committed only if every member keeps n-1 remote
/// vertices; rejected candidates sit out until the next commit.
inline Expansion expand(const BipartiteGraph& g, int n, const VertexSet& members, Side side, Rng& rng,
                        CandidatePolicy policy) {
  Expansion ex{g, members, {}};
  auto report = find_a(ex.graph, n, ex.members, side);
  const std::size_t cap = g.vertex_count() + members.size() + report.candidates.size();
  std::size_t commits = 0;
  VertexSet excluded;

  auto commit = [&] {
    if (++commits > cap) throw Error(ErrorKind::iteration_cap_exceeded, "expansion did not terminate");
    if (!check_condition_I(ex.graph, ex.members, n)) {
      throw std::logic_error("expansion broke Condition I on " + format_set(ex.members));
    }
    excluded.clear();
    report = find_a(ex.graph, n, ex.members, side);
  };

  while (true) {
    std::vector<VertexId> direct, overlapping;
    for (const auto& [v, overlap] : report.a_map) {
      if (excluded.contains(v)) continue;
      (overlap.empty() ? direct : overlapping).push_back(v);
    }
    if (direct.empty() && overlapping.empty()) break;

    if (!direct.empty()) {
      VertexId v = policy == CandidatePolicy::uniform ? direct[uniform_index(rng, direct.size())] : direct.front();
      ex.members.insert(v);
      ex.trace.push_back({StepKind::direct_add, v, {}, ex.members});
      commit();
      continue;
    }

    Bitset covered(ex.graph.size(opposite(side)));
    for (auto m : ex.members) covered |= remote_mask(ex.graph, m);

    auto overlap_size = [&](VertexId v) { return (remote_mask(ex.graph, v) & covered).count(); };
    VertexId v;
    if (policy == CandidatePolicy::uniform) {
      v = overlapping[uniform_index(rng, overlapping.size())];
    } else {
      v = *std::ranges::min_element(overlapping, {}, [&](VertexId c) {
        return std::make_tuple(report.abar2a.at(c).size(), overlap_size(c), c);
      });
    }

    const auto& covers = report.abar2a.at(v);
    std::optional<VertexId> w;
    if (covers.size() == 1) w = *covers.begin();
    Bitset doomed = remote_mask(ex.graph, v) & covered;
    if (w) doomed -= remote_mask(ex.graph, *w);
    VertexSet removed = ex.graph.to_set(opposite(side), doomed);
    if (w) removed.insert(*w);

    auto next_graph = ex.graph.without(removed);
    VertexSet next_members = ex.members;
    next_members.insert(v);
    if (w) next_members.erase(*w);

    bool keeps_mass = std::ranges::all_of(
        next_members, [&](VertexId m) { return remote_mask(next_graph, m).count() >= detail::need(n); });
    if (!keeps_mass) {
      excluded.insert(v);
      ex.trace.push_back({StepKind::guard_reject, v, {}, ex.members});
      continue;
    }
    ex.graph = std::move(next_graph);
    ex.members = std::move(next_members);
    ex.trace.push_back({w ? StepKind::swap : StepKind::overlap_add, v, std::move(removed), ex.members});
    commit();
  }
  return ex;
}

/// Each member paired with the n-1 smallest ids of its opposite remote set.
inline std::vector<GhzGroup> materialize_ghz(const BipartiteGraph& g, const VertexSet& members, int n) {
  if (members.empty()) return {};
  if (!check_condition_I(g, members, n)) {
    throw Error(ErrorKind::invalid_members, "member set " + format_set(members) + " violates Condition I");
  }
  std::vector<GhzGroup> groups;
  for (auto v : members) {
    auto remote = opposite_remote_set(g, v);
    GhzGroup group{v, {}};
    for (auto it = remote.begin(); group.partners.size() < detail::need(n); ++it) group.partners.push_back(*it);
    groups.push_back(std::move(group));
  }
  return groups;
}

namespace detail {

inline Side resolve_host(HostPartition host, const BipartiteGraph& g) {
  switch (host) {
    case HostPartition::p1: return Side::p1;
    case HostPartition::p2: return Side::p2;
    default: return g.size(Side::p1) <= g.size(Side::p2) ? Side::p1 : Side::p2;
  }
}

inline void validate(const BipartiteGraph& g, const ExtractionConfig& cfg) {
  require_mass(cfg.n);
  if (cfg.restarts < 1) throw Error(ErrorKind::invalid_argument, "restarts must be >= 1");
  if (g.size(Side::p1) == 0 || g.size(Side::p2) == 0) {
    throw Error(ErrorKind::degenerate_graph, "both partitions must be nonempty");
  }
  if (!is_connected(g)) throw Error(ErrorKind::degenerate_graph, "graph is not connected");
}

inline ExtractionResult finish(int n, Side side, int restart, std::size_t seed_volume, Expansion ex,
                               std::vector<TraceStep> trace) {
  ExtractionResult r;
  r.n = n;
  r.host = side;
  r.restart = restart;
  r.seed_volume = seed_volume;
  r.ghz_groups = materialize_ghz(ex.graph, ex.members, n);
  r.volume = ex.members.size();
  r.members = std::move(ex.members);
  r.final_graph = std::move(ex.graph);
  trace.insert(trace.end(), std::make_move_iterator(ex.trace.begin()), std::make_move_iterator(ex.trace.end()));
  r.trace = std::move(trace);
  return r;
}

inline ExtractionResult single_run(const BipartiteGraph& g, const ExtractionConfig& cfg, HostPartition host,
                                   int restart, Rng& rng) {
  std::vector<TraceStep> trace;
  auto repair = ensure_star_vertices(g, cfg.star_policy, rng);
  for (Side s : {Side::p1, Side::p2}) {
    if (repair.chosen[index(s)]) trace.push_back({StepKind::star_repair, repair.chosen[index(s)], repair.removed[index(s)], {}});
  }
  BipartiteGraph graph = std::move(repair.graph);
  Side side = resolve_host(host, graph);

  auto seeds = seed_families(graph, cfg.n, side, rng);
  VertexSet members;
  if (seeds.b_g.size() > seeds.a_g.size()) {
    auto shared = remote_intersection(graph, seeds.b_g);
    graph = graph.without(shared);
    members = seeds.b_g;
    trace.push_back({StepKind::seed_b, std::nullopt, std::move(shared), members});
  } else {
    members = seeds.a_g;
    trace.push_back({StepKind::seed_a, std::nullopt, {}, members});
  }
  const auto seed_volume = std::max(seeds.a_g.size(), seeds.b_g.size());
  auto ex = expand(graph, cfg.n, members, side, rng, cfg.candidate_policy);
  return finish(cfg.n, side, restart, seed_volume, std::move(ex), std::move(trace));
}

// Larger volume wins, then fewer deletions; earlier runs win remaining ties.
inline bool better(const ExtractionResult& a, const ExtractionResult& b) {
  if (a.volume != b.volume) return a.volume > b.volume;
  return a.deleted_count() < b.deleted_count();
}

}  // namespace detail

/// Full pipeline: star repair, randomized seeding, expansion. With several
/// restarts (or both host partitions) the best run is returned; restart r
/// draws from its own substream of cfg.seed.
inline ExtractionResult remote_extraction(const BipartiteGraph& g, const ExtractionConfig& cfg) {
  detail::validate(g, cfg);
  std::vector<HostPartition> hosts{cfg.host};
  if (cfg.host == HostPartition::both) hosts = {HostPartition::p1, HostPartition::p2};

  std::optional<ExtractionResult> best;
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto substream = derive_seed(cfg.seed, {static_cast<std::uint64_t>(r)});
    for (auto host : hosts) {
      Rng rng(substream);
      auto run = detail::single_run(g, cfg, host, r, rng);
      if (!best || detail::better(run, *best)) best = std::move(run);
    }
  }
  return std::move(*best);
}

/// Remote Pairability r_g(2).
inline ExtractionResult remote_pairability(const BipartiteGraph& g, ExtractionConfig cfg) {
  cfg.n = 2;
  return remote_extraction(g, cfg);
}

/// Expansion from a caller-chosen Condition I seed on a graph that already has
/// stars in both partitions. Star repair and seed selection are skipped.
inline ExtractionResult extract_from_seed(const BipartiteGraph& g, const ExtractionConfig& cfg, Side side,
                                          const VertexSet& seed) {
  detail::require_mass(cfg.n);
  if (!has_stars_in_both(g)) throw Error(ErrorKind::no_star_vertex, "seeded extraction needs stars in both partitions");
  detail::host_side_of(g, seed, side);
  detail::require_condition_I(g, seed, cfg.n);
  Rng rng(derive_seed(cfg.seed, {0}));
  auto ex = expand(g, cfg.n, seed, side, rng, cfg.candidate_policy);
  return detail::finish(cfg.n, side, 0, seed.size(), std::move(ex), {{StepKind::seed_a, std::nullopt, {}, seed}});
}

struct Verdict {
  bool ok = true;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

/// Independent re-check of an extraction against the original graph.
inline Verdict verify_result(const BipartiteGraph& original, const ExtractionResult& r) {
  auto fail = [](std::string why) { return Verdict{false, std::move(why)}; };
  try {
    if (r.n < 2) return fail("mass n=" + std::to_string(r.n) + " below 2");
    if (r.volume != r.members.size()) {
      return fail("volume != |members| (" + std::to_string(r.volume) + " vs " + std::to_string(r.members.size()) + ")");
    }
    if (r.volume < r.seed_volume) return fail("volume below seed_volume");

    BipartiteGraph replay = original;
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const auto& step = r.trace[i];
      for (auto v : step.removed) {
        if (!replay.contains(v)) return fail("trace step " + std::to_string(i) + " deletes absent vertex " + std::to_string(v));
        if (step.members_after.contains(v)) return fail("trace step " + std::to_string(i) + " deletes a member");
      }
      replay = replay.without(step.removed);
    }
    if (!(replay == r.final_graph)) return fail("final graph does not match trace replay");
    if (!r.trace.empty() && r.trace.back().kind != StepKind::star_repair && r.trace.back().members_after != r.members) {
      return fail("members differ from the last trace step");
    }

    const auto& g = r.final_graph;
    if (!has_stars_in_both(g)) return fail("final graph lacks a star vertex in some partition");
    for (auto v : r.members) {
      if (!g.contains(v)) return fail("member " + std::to_string(v) + " not in final graph");
    }
    if (!r.members.empty()) detail::common_side(g, r.members);
    Bitset covered;
    for (auto v : r.members) {
      auto mask = remote_mask(g, v);
      if (covered.size() != mask.size()) covered.resize(mask.size());
      if (mask.count() < detail::need(r.n)) {
        return fail("condition I cardinality: member " + std::to_string(v) + " has " + std::to_string(mask.count()) +
                    " remote vertices, needs " + std::to_string(r.n - 1));
      }
      if (mask.intersects(covered)) return fail("condition I disjointness: member " + std::to_string(v) + " overlaps");
      covered |= mask;
    }

    if (r.ghz_groups.size() != r.members.size()) return fail("one GHZ group per member expected");
    VertexSet used;
    for (const auto& grp : r.ghz_groups) {
      if (!r.members.contains(grp.member)) return fail("GHZ group for non-member " + std::to_string(grp.member));
      if (grp.partners.size() != detail::need(r.n)) return fail("GHZ group of " + std::to_string(grp.member) + " has wrong size");
      if (!used.insert(grp.member).second) return fail("vertex " + std::to_string(grp.member) + " in two GHZ groups");
      auto remote = opposite_remote_set(g, grp.member);
      for (auto p : grp.partners) {
        if (!remote.contains(p)) return fail("partner " + std::to_string(p) + " not remote from " + std::to_string(grp.member));
        if (!used.insert(p).second) return fail("vertex " + std::to_string(p) + " in two GHZ groups");
      }
      std::vector<VertexId> group{grp.member};
      group.insert(group.end(), grp.partners.begin(), grp.partners.end());
      for (std::size_t i = 0; i < group.size(); ++i)
        for (std::size_t j = i + 1; j < group.size(); ++j)
          if (!is_remote(original, group[i], group[j])) {
            return fail("GHZ vertices " + std::to_string(group[i]) + " and " + std::to_string(group[j]) + " are adjacent");
          }
    }
  } catch (const Error& e) {
    return fail(e.what());
  }
  return {};
}

}  // namespace remote_vm
