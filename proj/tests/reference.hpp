#pragma once

// Plain std::set transcriptions of the remote-set algebra and the two
// extraction conditions. Deliberately slow and direct; used as a
// differential oracle against the bitset implementation.

#include <map>
#include <set>
#include <vector>

#include "remote_vm/remote_vm.hpp"

namespace ref {

using remote_vm::Side;
using remote_vm::VertexId;
using Set = std::set<VertexId>;

struct Graph {
  Set p1, p2;
  std::map<VertexId, Set> nbr;

  const Set& part(Side s) const { return s == Side::p1 ? p1 : p2; }
  Side side_of(VertexId v) const { return p1.count(v) ? Side::p1 : Side::p2; }
  const Set& opp(VertexId v) const { return p1.count(v) ? p2 : p1; }
};

inline Graph from(const remote_vm::BipartiteGraph& g) {
  Graph r;
  for (auto v : g.vertices(Side::p1)) r.p1.insert(v), r.nbr[v];
  for (auto v : g.vertices(Side::p2)) r.p2.insert(v), r.nbr[v];
  for (auto [u, v] : g.edges()) {
    r.nbr[u].insert(v);
    r.nbr[v].insert(u);
  }
  return r;
}

inline Set remote(const Graph& g, VertexId v) {
  Set out;
  for (auto w : g.opp(v))
    if (!g.nbr.at(v).count(w)) out.insert(w);
  return out;
}

inline Set stars(const Graph& g, Side s) {
  Set out;
  for (auto v : g.part(s))
    if (remote(g, v).empty()) out.insert(v);
  return out;
}

inline bool stars_in_both(const Graph& g) { return !stars(g, Side::p1).empty() && !stars(g, Side::p2).empty(); }

inline Set unite(const Set& a, const Set& b) {
  Set out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline Set meet(const Set& a, const Set& b) {
  Set out;
  for (auto x : a)
    if (b.count(x)) out.insert(x);
  return out;
}

inline Set minus(const Set& a, const Set& b) {
  Set out;
  for (auto x : a)
    if (!b.count(x)) out.insert(x);
  return out;
}

inline Set remote_union(const Graph& g, const Set& family) {
  Set out;
  for (auto v : family) out = unite(out, remote(g, v));
  return out;
}

inline Set remote_intersection(const Graph& g, const Set& family) {
  if (family.empty()) return {};
  Set out = remote(g, *family.begin());
  for (auto v : family) out = meet(out, remote(g, v));
  return out;
}

inline bool condition_I(const Graph& g, const Set& a, int n) {
  if (!stars_in_both(g)) return false;
  for (auto v : a) {
    auto r = remote(g, v);
    if (r.empty()) return false;
    if (static_cast<int>(r.size()) < n - 1) return false;
  }
  for (auto u : a)
    for (auto v : a)
      if (u < v && !meet(remote(g, u), remote(g, v)).empty()) return false;
  return true;
}

// Literal reading: nonempty common intersection I, residuals N̄(v) \ I of
// size >= n-1 and pairwise disjoint.
inline bool condition_II(const Graph& g, const Set& b, int n) {
  if (b.size() < 2 || !stars_in_both(g)) return false;
  for (auto v : b)
    if (remote(g, v).empty()) return false;
  auto common = remote_intersection(g, b);
  if (common.empty()) return false;
  for (auto v : b)
    if (static_cast<int>(minus(remote(g, v), common).size()) < n - 1) return false;
  for (auto u : b)
    for (auto v : b)
      if (u < v && !meet(minus(remote(g, u), common), minus(remote(g, v), common)).empty()) return false;
  return true;
}

// Every subset of the non-star vertices of one side, no pruning.
inline std::size_t max_family(const Graph& g, int n, Side side, bool second) {
  std::vector<VertexId> pool;
  for (auto v : g.part(side))
    if (!remote(g, v).empty()) pool.push_back(v);
  std::size_t best = 0;
  for (unsigned long mask = 0; mask < (1ul << pool.size()); ++mask) {
    Set fam;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask >> i & 1) fam.insert(pool[i]);
    if (fam.size() <= best) continue;
    if (second ? condition_II(g, fam, n) : condition_I(g, fam, n)) best = fam.size();
  }
  return best;
}

// Candidate pool of the expansion step, straight from its definition.
struct Candidates {
  Set candidates;
  std::map<VertexId, Set> abar2a, b2a;
  std::set<VertexId> admissible;
};

inline Candidates find_a(const Graph& g, int n, const Set& members, Side side) {
  Candidates out;
  auto covered = remote_union(g, members);
  for (auto v : g.part(side)) {
    if (members.count(v)) continue;
    auto r = remote(g, v);
    if (r.empty() || static_cast<int>(r.size()) < n - 1) continue;
    if (minus(r, covered).empty()) continue;
    out.candidates.insert(v);
    Set contained, touching;
    for (auto w : members) {
      auto rw = remote(g, w);
      if (minus(rw, r).empty()) contained.insert(w);
      if (!meet(rw, r).empty()) touching.insert(w);
    }
    out.abar2a[v] = contained;
    out.b2a[v] = touching;
    bool ok = contained.size() <= 1;
    for (auto w : minus(touching, contained)) {
      Set pair{v, w};
      if (!condition_I(g, pair, n) && !condition_II(g, pair, n)) ok = false;
    }
    if (ok) out.admissible.insert(v);
  }
  return out;
}

}  // namespace ref
