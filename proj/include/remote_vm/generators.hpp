#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "remote_vm/graph.hpp"
#include "remote_vm/rng.hpp"

namespace remote_vm {

/// Edge-count bounds for a connected bipartite graph on the given partitions.
struct EdgeBounds {
  std::size_t lo;
  std::size_t hi;
};

constexpr EdgeBounds connected_bipartite_bounds(std::size_t p1_size, std::size_t p2_size) {
  return {p1_size + p2_size - 1, p1_size * p2_size};
}

/// Random connected bipartite graph with exactly m edges. P1 gets ids
/// 0..p1_size-1 and P2 gets p1_size..p1_size+p2_size-1.
///
/// A random spanning tree across the bipartition comes first (each new vertex
/// hooks onto a uniformly chosen placed vertex of the other side), then the
/// remaining edges are drawn uniformly from the unused cross slots.
inline BipartiteGraph random_connected_bipartite(std::size_t p1_size, std::size_t p2_size, std::size_t m, Rng& rng) {
  if (p1_size == 0 || p2_size == 0) throw Error(ErrorKind::invalid_argument, "partition sizes must be >= 1");
  auto [lo, hi] = connected_bipartite_bounds(p1_size, p2_size);
  if (m < lo || m > hi) {
    throw Error(ErrorKind::edge_count_out_of_range,
                "m=" + std::to_string(m) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  std::vector<VertexId> p1(p1_size), p2(p2_size);
  std::iota(p1.begin(), p1.end(), VertexId{0});
  std::iota(p2.begin(), p2.end(), static_cast<VertexId>(p1_size));

  std::vector<std::vector<bool>> used(p1_size, std::vector<bool>(p2_size, false));
  std::vector<Edge> edges;
  edges.reserve(m);
  auto link = [&](std::size_t i, std::size_t j) {
    used[i][j] = true;
    edges.emplace_back(p1[i], p2[j]);
  };

  std::vector<std::size_t> order1(p1_size), order2(p2_size);
  std::iota(order1.begin(), order1.end(), std::size_t{0});
  std::iota(order2.begin(), order2.end(), std::size_t{0});
  std::shuffle(order1.begin(), order1.end(), rng);
  std::shuffle(order2.begin(), order2.end(), rng);
  std::vector<std::size_t> placed1{order1[0]}, placed2{order2[0]};
  link(order1[0], order2[0]);

  // (side, slot) for every vertex still to be attached, in random order
  std::vector<std::pair<int, std::size_t>> rest;
  for (std::size_t k = 1; k < p1_size; ++k) rest.emplace_back(0, order1[k]);
  for (std::size_t k = 1; k < p2_size; ++k) rest.emplace_back(1, order2[k]);
  std::shuffle(rest.begin(), rest.end(), rng);
  for (auto [side, slot] : rest) {
    if (side == 0) {
      link(slot, placed2[uniform_index(rng, placed2.size())]);
      placed1.push_back(slot);
    } else {
      link(placed1[uniform_index(rng, placed1.size())], slot);
      placed2.push_back(slot);
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> free_slots;
  for (std::size_t i = 0; i < p1_size; ++i)
    for (std::size_t j = 0; j < p2_size; ++j)
      if (!used[i][j]) free_slots.emplace_back(i, j);
  std::vector<std::pair<std::size_t, std::size_t>> extra;
  std::sample(free_slots.begin(), free_slots.end(), std::back_inserter(extra), m - lo, rng);
  for (auto [i, j] : extra) link(i, j);

  return BipartiteGraph::build(std::move(p1), std::move(p2), edges);
}

enum class TopologyKind { random_bipartite, preferential_attachment, small_world_web, duplication_divergence };

inline std::string_view to_string(TopologyKind k) {
  switch (k) {
    case TopologyKind::random_bipartite: return "bipartite";
    case TopologyKind::preferential_attachment: return "as";
    case TopologyKind::small_world_web: return "www";
    case TopologyKind::duplication_divergence: return "ppi";
  }
  return "unknown";
}

inline TopologyKind topology_from_string(std::string_view s) {
  for (auto k : {TopologyKind::random_bipartite, TopologyKind::preferential_attachment, TopologyKind::small_world_web,
                 TopologyKind::duplication_divergence}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorKind::invalid_argument, "unknown topology model \"" + std::string(s) + "\"");
}

/// Internet-inspired topology families:
///   as  - preferential attachment (AS-level Internet)
///   www - ring lattice with hub-biased rewiring (web graph)
///   ppi - duplication-divergence (protein interaction)
///   bipartite - random connected bipartite graph on an even split
/// Each family's density knob (attachment count, lattice degree, retention
/// probability) is derived from the requested edge count; the fixed shape
/// parameters below are validated on use.
struct TopologyModel {
  TopologyKind kind = TopologyKind::random_bipartite;
  double rewiring = 0.1;     // www: probability an edge is rewired, [0, 1]
  double hub_bias = 0.5;     // www: probability a rewired endpoint is picked by degree, [0, 1]
  double parent_link = 0.5;  // ppi: probability the duplicate links to its parent, [0, 1]

  void validate() const {
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!unit(rewiring) || !unit(hub_bias) || !unit(parent_link)) {
      throw Error(ErrorKind::invalid_argument, "topology probabilities must lie in [0, 1]");
    }
  }
};

namespace detail {

inline VertexId pick_by_degree(const GeneralGraph& g, std::size_t n, Rng& rng) {
  std::vector<double> weights(n);
  for (std::size_t v = 0; v < n; ++v) weights[v] = static_cast<double>(g.degree(static_cast<VertexId>(v))) + 1.0;
  return static_cast<VertexId>(std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng));
}

inline void connect_components(GeneralGraph& g, Rng& rng) {
  while (true) {
    std::map<VertexId, int> comp;
    int count = 0;
    for (auto root : g.vertices()) {
      if (comp.contains(root)) continue;
      std::vector<VertexId> stack{root};
      comp[root] = count;
      while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto v : g.neighbors(u))
          if (comp.emplace(v, count).second) stack.push_back(v);
      }
      ++count;
    }
    if (count <= 1) return;
    std::vector<VertexId> first, others;
    for (auto [v, c] : comp) (c == 0 ? first : others).push_back(v);
    g.add_edge(first[uniform_index(rng, first.size())], others[uniform_index(rng, others.size())]);
  }
}

/// Adds degree-biased edges or removes non-bridge edges until the edge count
/// equals target. The graph must be connected on entry and stays connected.
inline void settle_edge_count(GeneralGraph& g, std::size_t target, Rng& rng) {
  const std::size_t n = g.vertex_count();
  std::size_t stalls = 0;
  while (g.edge_count() < target) {
    auto u = static_cast<VertexId>(uniform_index(rng, n));
    auto v = pick_by_degree(g, n, rng);
    if (u != v && g.add_edge(u, v)) {
      stalls = 0;
      continue;
    }
    if (++stalls < 64) continue;
    // near-complete graphs: fall back to a uniform free slot
    std::vector<Edge> free;
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = a + 1; b < n; ++b)
        if (!g.has_edge(a, b)) free.emplace_back(a, b);
    auto [a, b] = free[uniform_index(rng, free.size())];
    g.add_edge(a, b);
    stalls = 0;
  }
  while (g.edge_count() > target) {
    auto edges = g.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    bool removed = false;
    for (auto [u, v] : edges) {
      g.remove_edge(u, v);
      if (is_connected(g)) {
        removed = true;
        break;
      }
      g.add_edge(u, v);
    }
    if (!removed) throw Error(ErrorKind::unachievable_density, "cannot thin a tree further");
  }
}

inline GeneralGraph preferential_attachment(std::size_t n, std::size_t target, Rng& rng) {
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  GeneralGraph g(ids);
  const double per_node = static_cast<double>(target) / static_cast<double>(n - 1);
  const auto whole = static_cast<std::size_t>(std::floor(per_node));
  std::bernoulli_distribution extra(per_node - std::floor(per_node));
  for (std::size_t t = 1; t < n; ++t) {
    std::size_t k = std::clamp<std::size_t>(whole + (extra(rng) ? 1 : 0), 1, t);
    std::vector<double> weights(t);
    for (std::size_t v = 0; v < t; ++v) weights[v] = static_cast<double>(g.degree(static_cast<VertexId>(v))) + 1.0;
    for (std::size_t made = 0; made < k;) {
      auto v = std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng);
      if (g.add_edge(static_cast<VertexId>(t), static_cast<VertexId>(v))) {
        weights[v] = 0.0;
        ++made;
      }
    }
  }
  return g;
}

inline GeneralGraph small_world_web(std::size_t n, std::size_t target, const TopologyModel& model, Rng& rng) {
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  GeneralGraph g(ids);
  const std::size_t half = std::max<std::size_t>(1, (target + n / 2) / n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t d = 1; d <= half && d < n; ++d) g.add_edge(static_cast<VertexId>(v), static_cast<VertexId>((v + d) % n));
  std::bernoulli_distribution rewire(model.rewiring), by_degree(model.hub_bias);
  for (auto [u, v] : g.edges()) {
    if (!rewire(rng)) continue;
    auto w = by_degree(rng) ? pick_by_degree(g, n, rng) : static_cast<VertexId>(uniform_index(rng, n));
    if (w == u || g.has_edge(u, w)) continue;
    g.remove_edge(u, v);
    g.add_edge(u, w);
  }
  connect_components(g, rng);
  return g;
}

inline GeneralGraph duplication_divergence_once(std::size_t n, double retain, double parent_link, Rng& rng) {
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  GeneralGraph g(ids);
  g.add_edge(0, 1);
  std::bernoulli_distribution keep(retain), link(parent_link);
  for (std::size_t t = 2; t < n; ++t) {
    auto parent = static_cast<VertexId>(uniform_index(rng, t));
    auto fresh = static_cast<VertexId>(t);
    for (auto w : std::vector<VertexId>(g.neighbors(parent).begin(), g.neighbors(parent).end()))
      if (keep(rng)) g.add_edge(fresh, w);
    if (g.degree(fresh) == 0 || link(rng)) g.add_edge(fresh, parent);
  }
  return g;
}

/// Retention probability whose mean edge count is closest to target, by
/// bisection over a fixed-seed Monte-Carlo estimate.
inline double calibrate_retention(std::size_t n, std::size_t target, double parent_link) {
  auto mean_edges = [&](double q) {
    Rng probe(derive_seed(hash_tag("ppi-calibration"), {n, target}));
    double total = 0;
    constexpr int samples = 16;
    for (int s = 0; s < samples; ++s) total += static_cast<double>(duplication_divergence_once(n, q, parent_link, probe).edge_count());
    return total / samples;
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 14; ++it) {
    double mid = 0.5 * (lo + hi);
    (mean_edges(mid) < static_cast<double>(target) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Connected general graph on ids 0..node_count-1 with exactly target_edges
/// edges, shaped by the chosen topology family.
inline GeneralGraph internet_like_topology(const TopologyModel& model, std::size_t node_count, std::size_t target_edges,
                                           Rng& rng) {
  model.validate();
  if (node_count < 2) throw Error(ErrorKind::invalid_argument, "node_count must be >= 2");
  std::size_t max_edges = node_count * (node_count - 1) / 2;
  if (model.kind == TopologyKind::random_bipartite) max_edges = (node_count / 2) * (node_count - node_count / 2);
  if (target_edges < node_count - 1 || target_edges > max_edges) {
    throw Error(ErrorKind::unachievable_density, "target of " + std::to_string(target_edges) + " edges outside [" +
                                                     std::to_string(node_count - 1) + ", " + std::to_string(max_edges) +
                                                     "] for " + std::string(to_string(model.kind)));
  }

  GeneralGraph g;
  switch (model.kind) {
    case TopologyKind::random_bipartite: {
      auto b = random_connected_bipartite(node_count / 2, node_count - node_count / 2, target_edges, rng);
      std::vector<VertexId> ids(node_count);
      std::iota(ids.begin(), ids.end(), VertexId{0});
      g = GeneralGraph(ids);
      for (auto [u, v] : b.edges()) g.add_edge(u, v);
      return g;
    }
    case TopologyKind::preferential_attachment:
      g = detail::preferential_attachment(node_count, target_edges, rng);
      break;
    case TopologyKind::small_world_web:
      g = detail::small_world_web(node_count, target_edges, model, rng);
      break;
    case TopologyKind::duplication_divergence: {
      double q = detail::calibrate_retention(node_count, target_edges, model.parent_link);
      g = detail::duplication_divergence_once(node_count, q, model.parent_link, rng);
      break;
    }
  }
  detail::settle_edge_count(g, target_edges, rng);
  return g;
}

inline constexpr int default_subgraph_attempts = 64;

namespace detail {

// Drop the lowest-degree vertex whose removal keeps the set connected until
// target_size vertices remain.
inline VertexSet trim_connected(const GeneralGraph& g, VertexSet keep, std::size_t target_size) {
  GeneralGraph sub = g.induced(keep);
  while (sub.vertex_count() > target_size) {
    std::optional<VertexId> drop;
    std::size_t drop_degree = SIZE_MAX;
    for (auto v : sub.vertices()) {
      if (sub.degree(v) >= drop_degree) continue;
      VertexSet rest = keep;
      rest.erase(v);
      if (!is_connected(sub.induced(rest))) continue;
      drop = v;
      drop_degree = sub.degree(v);
    }
    keep.erase(*drop);
    sub = g.induced(keep);
  }
  return keep;
}

}  // namespace detail

/// Induced connected two-colorable subgraph with exactly target_size
/// vertices.
///
/// Each attempt grows a connected set from a random vertex, visiting frontier
/// vertices in random order and admitting one only when all its neighbours in
/// the set share a color (so the set stays two-colorable). Every set reaching
/// target_size is trimmed by repeatedly dropping the lowest-degree vertex whose
/// removal keeps it connected; the trimmed set with the most edges wins, first
/// attempt on ties. The partition holding the smallest id becomes P1.
inline BipartiteGraph bipartite_subgraph(const GeneralGraph& g, std::size_t target_size, Rng& rng,
                                         int attempts = default_subgraph_attempts) {
  if (target_size < 2 || target_size > g.vertex_count()) {
    throw Error(ErrorKind::invalid_argument, "target size " + std::to_string(target_size) + " not in [2, " +
                                                 std::to_string(g.vertex_count()) + "]");
  }
  const auto vertices = g.vertices();
  std::optional<VertexSet> best;
  std::size_t best_edges = 0;
  std::size_t largest = 0;
  for (int a = 0; a < attempts; ++a) {
    std::map<VertexId, int> color;
    VertexSet rejected;
    std::vector<VertexId> frontier;
    auto start = vertices[uniform_index(rng, vertices.size())];
    color[start] = 0;
    auto push_neighbors = [&](VertexId u) {
      for (auto v : g.neighbors(u))
        if (!color.contains(v) && !rejected.contains(v) && std::ranges::find(frontier, v) == frontier.end())
          frontier.push_back(v);
    };
    push_neighbors(start);
    while (!frontier.empty()) {
      auto pos = uniform_index(rng, frontier.size());
      auto v = frontier[pos];
      frontier[pos] = frontier.back();
      frontier.pop_back();
      int seen = -1;
      bool ok = true;
      for (auto u : g.neighbors(v)) {
        auto it = color.find(u);
        if (it == color.end()) continue;
        if (seen == -1) seen = it->second;
        else if (seen != it->second) ok = false;
      }
      if (!ok) {
        rejected.insert(v);
        continue;
      }
      color[v] = 1 - seen;
      push_neighbors(v);
    }
    largest = std::max(largest, color.size());
    if (color.size() < target_size) continue;
    VertexSet grown;
    for (auto [v, _] : color) grown.insert(v);
    auto trimmed = detail::trim_connected(g, std::move(grown), target_size);
    auto edges = g.induced(trimmed).edge_count();
    if (!best || edges > best_edges) {
      best = std::move(trimmed);
      best_edges = edges;
    }
    // a two-colorable connected graph is grown whole by every attempt
    if (largest == vertices.size()) break;
  }
  if (!best) {
    throw Error(ErrorKind::no_bipartite_subgraph, "largest connected bipartite subgraph found has " +
                                                      std::to_string(largest) + " < " + std::to_string(target_size) +
                                                      " vertices");
  }

  GeneralGraph sub = g.induced(*best);
  std::map<VertexId, int> color;
  two_color(sub, color);
  std::vector<VertexId> p1, p2;
  for (auto [v, c] : color) (c == 0 ? p1 : p2).push_back(v);
  auto edges = sub.edges();
  return BipartiteGraph::build(std::move(p1), std::move(p2), edges);
}

}  // namespace remote_vm
