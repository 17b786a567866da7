#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "remote_vm/error.hpp"

namespace remote_vm {

/// Vertex ids name physical network nodes and survive deletions unchanged.
using VertexId = std::uint32_t;
using VertexSet = std::set<VertexId>;
using Edge = std::pair<VertexId, VertexId>;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

enum class Side : std::uint8_t { p1 = 0, p2 = 1 };

constexpr Side opposite(Side s) noexcept { return s == Side::p1 ? Side::p2 : Side::p1; }
constexpr std::size_t index(Side s) noexcept { return static_cast<std::size_t>(s); }
constexpr int number(Side s) noexcept { return s == Side::p1 ? 1 : 2; }

inline std::string format_set(const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto v : s) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

/// Two-colorable graph G = (P1, P2, E).
///
/// Adjacency of a vertex is a bitset over the slots of the opposite
/// partition, so remote-set algebra costs O(|opposite| / 64) per vertex.
/// Values are immutable once built; deletions return a new graph.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  static BipartiteGraph build(std::vector<VertexId> p1, std::vector<VertexId> p2,
                              std::span<const Edge> edges) {
    BipartiteGraph g;
    std::ranges::sort(p1);
    std::ranges::sort(p2);
    g.ids_ = {std::move(p1), std::move(p2)};
    for (Side s : {Side::p1, Side::p2}) {
      const auto& ids = g.ids_[index(s)];
      for (std::size_t i = 0; i < ids.size(); ++i) {
        auto [it, fresh] = g.slot_.emplace(ids[i], Slot{s, static_cast<std::uint32_t>(i)});
        if (!fresh) throw Error(ErrorKind::duplicate_vertex, "vertex " + std::to_string(ids[i]) + " listed twice");
      }
    }
    g.adj_[0].assign(g.ids_[0].size(), Bitset(g.ids_[1].size()));
    g.adj_[1].assign(g.ids_[1].size(), Bitset(g.ids_[0].size()));
    for (auto [u, v] : edges) {
      auto iu = g.slot_.find(u);
      auto iv = g.slot_.find(v);
      if (iu == g.slot_.end() || iv == g.slot_.end()) {
        throw Error(ErrorKind::unknown_endpoint, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                                     ") names vertex " + std::to_string(iu == g.slot_.end() ? u : v));
      }
      if (iu->second.side == iv->second.side) {
        throw Error(ErrorKind::intra_partition_edge, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                                         ") joins two vertices of P" +
                                                         std::to_string(number(iu->second.side)));
      }
      Slot a = iu->second;
      Slot b = iv->second;
      if (a.side == Side::p2) std::swap(a, b);
      if (g.adj_[0][a.pos].test(b.pos)) {
        throw Error(ErrorKind::duplicate_edge, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") repeated");
      }
      g.adj_[0][a.pos].set(b.pos);
      g.adj_[1][b.pos].set(a.pos);
      ++g.edge_count_;
    }
    return g;
  }

  const std::vector<VertexId>& vertices(Side s) const noexcept { return ids_[index(s)]; }
  std::size_t size(Side s) const noexcept { return ids_[index(s)].size(); }
  std::size_t vertex_count() const noexcept { return ids_[0].size() + ids_[1].size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool contains(VertexId v) const { return slot_.contains(v); }

  Side side_of(VertexId v) const { return locate(v).side; }
  std::size_t slot_of(VertexId v) const { return locate(v).pos; }
  VertexId at(Side s, std::size_t slot) const { return ids_[index(s)][slot]; }

  /// Neighbours of `v` as a bitset over the opposite partition's slots.
  const Bitset& neighbor_mask(VertexId v) const {
    auto sl = locate(v);
    return adj_[index(sl.side)][sl.pos];
  }
  const Bitset& neighbor_mask_at(Side s, std::size_t slot) const { return adj_[index(s)][slot]; }

  bool adjacent(VertexId u, VertexId v) const {
    auto a = locate(u);
    auto b = locate(v);
    return a.side != b.side && adj_[index(a.side)][a.pos].test(b.pos);
  }

  std::size_t degree(VertexId v) const { return neighbor_mask(v).count(); }

  VertexSet to_set(Side s, const Bitset& mask) const {
    VertexSet out;
    for (auto i = mask.find_first(); i != Bitset::npos; i = mask.find_next(i)) out.insert(ids_[index(s)][i]);
    return out;
  }

  Bitset to_mask(Side s, const VertexSet& vs) const {
    Bitset mask(size(s));
    for (auto v : vs) {
      auto sl = locate(v);
      if (sl.side != s) {
        throw Error(ErrorKind::mixed_partition,
                    "vertex " + std::to_string(v) + " is not in P" + std::to_string(number(s)));
      }
      mask.set(sl.pos);
    }
    return mask;
  }

  /// Edges as (P1 endpoint, P2 endpoint), sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t i = 0; i < ids_[0].size(); ++i) {
      const auto& row = adj_[0][i];
      for (auto j = row.find_first(); j != Bitset::npos; j = row.find_next(j)) out.emplace_back(ids_[0][i], ids_[1][j]);
    }
    return out;
  }

  /// Induced subgraph on V \ removed. Ids not present are ignored.
  BipartiteGraph without(const VertexSet& removed) const {
    BipartiteGraph g;
    std::array<std::vector<std::uint32_t>, 2> old_of;  // new slot -> old slot
    for (Side s : {Side::p1, Side::p2}) {
      const auto& ids = ids_[index(s)];
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (removed.contains(ids[i])) continue;
        g.slot_.emplace(ids[i], Slot{s, static_cast<std::uint32_t>(g.ids_[index(s)].size())});
        g.ids_[index(s)].push_back(ids[i]);
        old_of[index(s)].push_back(static_cast<std::uint32_t>(i));
      }
    }
    g.adj_[0].assign(g.ids_[0].size(), Bitset(g.ids_[1].size()));
    g.adj_[1].assign(g.ids_[1].size(), Bitset(g.ids_[0].size()));
    for (std::size_t i = 0; i < g.ids_[0].size(); ++i) {
      const auto& old_row = adj_[0][old_of[0][i]];
      for (std::size_t j = 0; j < g.ids_[1].size(); ++j) {
        if (old_row.test(old_of[1][j])) {
          g.adj_[0][i].set(j);
          g.adj_[1][j].set(i);
          ++g.edge_count_;
        }
      }
    }
    return g;
  }

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.ids_ == b.ids_ && a.adj_ == b.adj_;
  }

 private:
  struct Slot {
    Side side;
    std::uint32_t pos;
  };

  Slot locate(VertexId v) const {
    auto it = slot_.find(v);
    if (it == slot_.end()) throw Error(ErrorKind::unknown_vertex, "vertex " + std::to_string(v) + " not in graph");
    return it->second;
  }

  std::array<std::vector<VertexId>, 2> ids_;
  std::array<std::vector<Bitset>, 2> adj_;
  std::unordered_map<VertexId, Slot> slot_;
  std::size_t edge_count_ = 0;
};

/// Undirected simple graph without a prescribed bipartition.
class GeneralGraph {
 public:
  GeneralGraph() = default;
  explicit GeneralGraph(std::span<const VertexId> vertices) {
    for (auto v : vertices) {
      if (!adj_.emplace(v, VertexSet{}).second) {
        throw Error(ErrorKind::duplicate_vertex, "vertex " + std::to_string(v) + " listed twice");
      }
    }
  }

  /// Returns false when the edge already exists.
  bool add_edge(VertexId u, VertexId v) {
    if (u == v) throw Error(ErrorKind::invalid_argument, "self-loop at " + std::to_string(u));
    auto iu = adj_.find(u);
    auto iv = adj_.find(v);
    if (iu == adj_.end() || iv == adj_.end()) {
      throw Error(ErrorKind::unknown_endpoint, "vertex " + std::to_string(iu == adj_.end() ? u : v));
    }
    if (!iu->second.insert(v).second) return false;
    iv->second.insert(u);
    ++edge_count_;
    return true;
  }

  bool remove_edge(VertexId u, VertexId v) {
    auto iu = adj_.find(u);
    if (iu == adj_.end() || iu->second.erase(v) == 0) return false;
    adj_.at(v).erase(u);
    --edge_count_;
    return true;
  }

  bool has_edge(VertexId u, VertexId v) const {
    auto it = adj_.find(u);
    return it != adj_.end() && it->second.contains(v);
  }

  bool contains(VertexId v) const { return adj_.contains(v); }

  const VertexSet& neighbors(VertexId v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw Error(ErrorKind::unknown_vertex, "vertex " + std::to_string(v) + " not in graph");
    return it->second;
  }

  std::size_t degree(VertexId v) const { return neighbors(v).size(); }
  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(adj_.size());
    for (const auto& [v, _] : adj_) out.push_back(v);
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (const auto& [u, ns] : adj_)
      for (auto v : ns)
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Induced subgraph on `keep`.
  GeneralGraph induced(const VertexSet& keep) const {
    std::vector<VertexId> vs(keep.begin(), keep.end());
    GeneralGraph sub(vs);
    for (auto u : keep)
      for (auto v : neighbors(u))
        if (u < v && keep.contains(v)) sub.add_edge(u, v);
    return sub;
  }

 private:
  std::map<VertexId, VertexSet> adj_;
  std::size_t edge_count_ = 0;
};

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

inline BipartiteGraph build_bipartite(std::vector<VertexId> p1, std::vector<VertexId> p2,
                                      std::span<const Edge> edges) {
  return BipartiteGraph::build(std::move(p1), std::move(p2), edges);
}

/// u and v are remote iff they are distinct and non-adjacent.
inline bool is_remote(const BipartiteGraph& g, VertexId u, VertexId v) {
  g.side_of(u);
  g.side_of(v);
  return u != v && !g.adjacent(u, v);
}

/// Opposite remote set as a bitset over the opposite partition's slots.
inline Bitset remote_mask(const BipartiteGraph& g, VertexId v) { return ~g.neighbor_mask(v); }

inline VertexSet opposite_remote_set(const BipartiteGraph& g, VertexId v) {
  return g.to_set(opposite(g.side_of(v)), remote_mask(g, v));
}

namespace detail {

inline Side common_side(const BipartiteGraph& g, const VertexSet& family) {
  Side s = g.side_of(*family.begin());
  for (auto v : family) {
    if (g.side_of(v) != s) {
      throw Error(ErrorKind::mixed_partition, "family " + format_set(family) + " spans both partitions");
    }
  }
  return s;
}

}  // namespace detail

inline VertexSet remote_union(const BipartiteGraph& g, const VertexSet& family) {
  if (family.empty()) return {};
  Side s = detail::common_side(g, family);
  Bitset acc(g.size(opposite(s)));
  for (auto v : family) acc |= remote_mask(g, v);
  return g.to_set(opposite(s), acc);
}

/// Intersection over the empty family is the empty set.
inline VertexSet remote_intersection(const BipartiteGraph& g, const VertexSet& family) {
  if (family.empty()) return {};
  Side s = detail::common_side(g, family);
  Bitset acc(g.size(opposite(s)));
  acc.set();
  for (auto v : family) acc &= remote_mask(g, v);
  return g.to_set(opposite(s), acc);
}

inline bool is_star(const BipartiteGraph& g, VertexId v) { return g.neighbor_mask(v).all(); }

inline VertexSet star_vertices(const BipartiteGraph& g, Side s) {
  VertexSet out;
  for (std::size_t i = 0; i < g.size(s); ++i)
    if (g.neighbor_mask_at(s, i).all()) out.insert(g.at(s, i));
  return out;
}

inline bool has_star(const BipartiteGraph& g, Side s) {
  for (std::size_t i = 0; i < g.size(s); ++i)
    if (g.neighbor_mask_at(s, i).all()) return true;
  return false;
}

inline bool has_stars_in_both(const BipartiteGraph& g) { return has_star(g, Side::p1) && has_star(g, Side::p2); }

inline BipartiteGraph delete_vertices(const BipartiteGraph& g, const VertexSet& removed) {
  for (auto v : removed) g.side_of(v);
  return g.without(removed);
}

inline bool is_connected(const BipartiteGraph& g) {
  if (g.vertex_count() == 0) throw Error(ErrorKind::empty_graph, "connectivity of an empty graph");
  std::array<Bitset, 2> seen{Bitset(g.size(Side::p1)), Bitset(g.size(Side::p2))};
  std::queue<std::pair<Side, std::size_t>> frontier;
  Side start = g.size(Side::p1) > 0 ? Side::p1 : Side::p2;
  seen[index(start)].set(0);
  frontier.emplace(start, 0);
  std::size_t reached = 1;
  while (!frontier.empty()) {
    auto [s, i] = frontier.front();
    frontier.pop();
    const auto& row = g.neighbor_mask_at(s, i);
    auto& other = seen[index(opposite(s))];
    for (auto j = row.find_first(); j != Bitset::npos; j = row.find_next(j)) {
      if (other.test(j)) continue;
      other.set(j);
      ++reached;
      frontier.emplace(opposite(s), j);
    }
  }
  return reached == g.vertex_count();
}

inline bool is_connected(const GeneralGraph& g) {
  if (g.vertex_count() == 0) throw Error(ErrorKind::empty_graph, "connectivity of an empty graph");
  auto vs = g.vertices();
  VertexSet seen{vs.front()};
  std::vector<VertexId> stack{vs.front()};
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto v : g.neighbors(u))
      if (seen.insert(v).second) stack.push_back(v);
  }
  return seen.size() == g.vertex_count();
}

/// BFS two-coloring. Returns false when an odd cycle exists. Each component's
/// smallest id gets color 0.
inline bool two_color(const GeneralGraph& g, std::map<VertexId, int>& color) {
  color.clear();
  for (auto root : g.vertices()) {
    if (color.contains(root)) continue;
    color[root] = 0;
    std::queue<VertexId> q;
    q.push(root);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto v : g.neighbors(u)) {
        auto it = color.find(v);
        if (it == color.end()) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (it->second == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace remote_vm
