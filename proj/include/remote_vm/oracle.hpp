#pragma once

#include <cstdint>
#include <vector>

#include "remote_vm/conditions.hpp"
#include "remote_vm/graph.hpp"

namespace remote_vm {

/// Exact maximum family for one extraction condition, by branch and bound.
struct OracleResult {
  std::size_t best_size = 0;
  VertexSet best_family;
  ConditionKind condition = ConditionKind::condition_i;
  std::uint64_t explored = 0;
};

inline constexpr std::size_t default_enumeration_cap = 20;

/// ceil(N / n): no extraction can place more than N/n disjoint n-vertex groups.
constexpr std::size_t volume_upper_bound(std::size_t vertex_count, int n) {
  return (vertex_count + static_cast<std::size_t>(n) - 1) / static_cast<std::size_t>(n);
}

namespace detail {

struct OracleInput {
  std::vector<VertexId> ids;
  std::vector<Bitset> masks;
};

inline OracleInput oracle_input(const BipartiteGraph& g, int n, Side side, std::size_t cap) {
  require_mass(n);
  OracleInput in;
  for (std::size_t i = 0; i < g.size(side); ++i) {
    const auto& row = g.neighbor_mask_at(side, i);
    if (row.all()) continue;
    in.ids.push_back(g.at(side, i));
    in.masks.push_back(~row);
  }
  if (in.ids.size() > cap) {
    throw Error(ErrorKind::instance_too_large, std::to_string(in.ids.size()) + " non-star vertices in P" +
                                                   std::to_string(number(side)) + " exceed the cap of " +
                                                   std::to_string(cap));
  }
  return in;
}

// Both conditions are closed under taking subfamilies (of size >= 2 for
// Condition II), so an invalid partial family is never extended.
class FamilySearch {
 public:
  FamilySearch(const OracleInput& in, int n, ConditionKind kind) : in_(in), n_(n), kind_(kind) {}

  void run() { descend(0); }

  std::vector<std::size_t> best;
  std::uint64_t explored = 0;

 private:
  bool valid(const std::vector<Bitset>& masks) const {
    if (kind_ == ConditionKind::condition_i) return disjoint_remote_sets(masks, n_);
    if (masks.size() == 1) return masks.front().count() >= static_cast<std::size_t>(n_);
    return unique_intersection(masks, n_).has_value();
  }

  void descend(std::size_t next) {
    ++explored;
    std::size_t floor = kind_ == ConditionKind::condition_ii ? 2 : 1;
    if (current_.size() >= floor && current_.size() > best.size()) best = current_;
    if (current_.size() + (in_.masks.size() - next) <= std::max(best.size(), floor - 1)) return;
    if (next == in_.masks.size()) return;

    masks_.push_back(in_.masks[next]);
    if (valid(masks_)) {
      current_.push_back(next);
      descend(next + 1);
      current_.pop_back();
    }
    masks_.pop_back();
    descend(next + 1);
  }

  const OracleInput& in_;
  int n_;
  ConditionKind kind_;
  std::vector<std::size_t> current_;
  std::vector<Bitset> masks_;
};

inline OracleResult search(const BipartiteGraph& g, int n, Side side, std::size_t cap, ConditionKind kind) {
  auto in = oracle_input(g, n, side, cap);
  OracleResult out;
  out.condition = kind;
  if (!has_stars_in_both(g)) return out;
  FamilySearch search(in, n, kind);
  search.run();
  out.explored = search.explored;
  out.best_size = search.best.size();
  for (auto i : search.best) out.best_family.insert(in.ids[i]);
  return out;
}

}  // namespace detail

inline OracleResult max_condition_I_family(const BipartiteGraph& g, int n, Side side,
                                           std::size_t cap = default_enumeration_cap) {
  return detail::search(g, n, side, cap, ConditionKind::condition_i);
}

inline OracleResult max_condition_II_family(const BipartiteGraph& g, int n, Side side,
                                            std::size_t cap = default_enumeration_cap) {
  return detail::search(g, n, side, cap, ConditionKind::condition_ii);
}

}  // namespace remote_vm
