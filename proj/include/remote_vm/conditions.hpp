#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "remote_vm/graph.hpp"
#include "remote_vm/rng.hpp"

namespace remote_vm {

enum class ConditionKind { condition_i, condition_ii };

/// A family satisfying one of the two extraction conditions, together with
/// the shared remote intersection (empty for Condition I).
struct ConditionWitness {
  ConditionKind kind;
  VertexSet family;
  VertexSet shared_intersection;
  int n;
};

enum class StarPolicy { random, min_remote_set };

namespace detail {

inline void require_mass(int n) {
  if (n < 2) throw Error(ErrorKind::invalid_argument, "GHZ mass n must be >= 2, got " + std::to_string(n));
}

inline std::size_t need(int n) { return static_cast<std::size_t>(n - 1); }

// Bitset-level predicates over the remote masks of a family. Stars in both
// partitions are checked by the callers.

inline bool disjoint_remote_sets(std::span<const Bitset> masks, int n) {
  if (masks.empty()) return true;
  Bitset seen(masks.front().size());
  for (const auto& m : masks) {
    if (m.count() < need(n) || m.intersects(seen)) return false;
    seen |= m;
  }
  return true;
}

/// Shared intersection when the family meets Condition II, nothing otherwise.
/// Pairwise intersections all equal the common one exactly when the residuals
/// (mask minus common) are pairwise disjoint.
inline std::optional<Bitset> unique_intersection(std::span<const Bitset> masks, int n) {
  if (masks.size() < 2) return std::nullopt;
  Bitset common = masks.front();
  for (const auto& m : masks.subspan(1)) common &= m;
  if (common.none()) return std::nullopt;
  Bitset seen(common.size());
  for (const auto& m : masks) {
    Bitset residual = m - common;
    if (residual.count() < need(n) || residual.intersects(seen)) return std::nullopt;
    seen |= residual;
  }
  return common;
}

inline std::vector<Bitset> family_masks(const BipartiteGraph& g, const VertexSet& family) {
  std::vector<Bitset> masks;
  masks.reserve(family.size());
  for (auto v : family) masks.push_back(remote_mask(g, v));
  return masks;
}

inline bool contains_star(const BipartiteGraph& g, const VertexSet& family) {
  for (auto v : family)
    if (is_star(g, v)) return true;
  return false;
}

}  // namespace detail

/// Condition I: stars exist in both partitions and the family's opposite
/// remote sets are pairwise disjoint with at least n-1 vertices each.
inline bool check_condition_I(const BipartiteGraph& g, const VertexSet& family, int n) {
  detail::require_mass(n);
  if (!family.empty()) detail::common_side(g, family);
  if (!has_stars_in_both(g) || detail::contains_star(g, family)) return false;
  return detail::disjoint_remote_sets(detail::family_masks(g, family), n);
}

/// Condition II: stars exist in both partitions, the family's opposite remote
/// sets share one nonempty common intersection (every pairwise intersection
/// equals it) and each keeps n-1 vertices outside it.
inline bool check_condition_II(const BipartiteGraph& g, const VertexSet& family, int n) {
  detail::require_mass(n);
  if (family.size() < 2) {
    throw Error(ErrorKind::family_too_small, "Condition II needs at least two vertices, got " + format_set(family));
  }
  detail::common_side(g, family);
  if (!has_stars_in_both(g) || detail::contains_star(g, family)) return false;
  return detail::unique_intersection(detail::family_masks(g, family), n).has_value();
}

/// Which condition (if any) the family meets, with its shared intersection.
inline std::optional<ConditionWitness> condition_witness(const BipartiteGraph& g, const VertexSet& family, int n) {
  if (check_condition_I(g, family, n)) return ConditionWitness{ConditionKind::condition_i, family, {}, n};
  if (family.size() >= 2 && check_condition_II(g, family, n)) {
    return ConditionWitness{ConditionKind::condition_ii, family, remote_intersection(g, family), n};
  }
  return std::nullopt;
}

inline bool pair_compatible(const BipartiteGraph& g, VertexId u, VertexId v, int n) {
  if (u == v) throw Error(ErrorKind::invalid_argument, "pair_compatible needs two distinct vertices");
  if (g.side_of(u) != g.side_of(v)) {
    throw Error(ErrorKind::mixed_partition,
                "vertices " + std::to_string(u) + " and " + std::to_string(v) + " lie in different partitions");
  }
  VertexSet pair{u, v};
  return check_condition_I(g, pair, n) || check_condition_II(g, pair, n);
}

/// Deletes N̄(v), which turns v into a star of its partition.
inline BipartiteGraph make_star(const BipartiteGraph& g, VertexId v) {
  auto removed = opposite_remote_set(g, v);
  if (removed.size() == g.size(opposite(g.side_of(v)))) {
    throw Error(ErrorKind::degenerate_graph, "making " + std::to_string(v) + " a star would empty P" +
                                                 std::to_string(number(opposite(g.side_of(v)))));
  }
  return g.without(removed);
}

struct StarRepair {
  BipartiteGraph graph;
  std::array<std::optional<VertexId>, 2> chosen;
  std::array<VertexSet, 2> removed;  // vertices deleted while repairing P1, P2
};

/// For each partition without a star (P1 first), picks a vertex per policy and
/// deletes its opposite remote set.
inline StarRepair ensure_star_vertices(const BipartiteGraph& g, StarPolicy policy, Rng& rng) {
  if (g.size(Side::p1) == 0 || g.size(Side::p2) == 0) {
    throw Error(ErrorKind::degenerate_graph, "both partitions must be nonempty");
  }
  StarRepair out{g, {}, {}};
  for (Side s : {Side::p1, Side::p2}) {
    if (has_star(out.graph, s)) continue;
    const auto& ids = out.graph.vertices(s);
    VertexId pick = ids.front();
    if (policy == StarPolicy::random) {
      pick = ids[uniform_index(rng, ids.size())];
    } else {
      std::size_t best = SIZE_MAX;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        auto remote = out.graph.size(opposite(s)) - out.graph.neighbor_mask_at(s, i).count();
        if (remote < best) {
          best = remote;
          pick = ids[i];
        }
      }
    }
    out.removed[index(s)] = opposite_remote_set(out.graph, pick);
    out.graph = make_star(out.graph, pick);
    out.chosen[index(s)] = pick;
  }
  return out;
}

}  // namespace remote_vm
