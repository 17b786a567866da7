#pragma once

#include <vector>

#include "remote_vm/remote_vm.hpp"

namespace fixtures {

using namespace remote_vm;

inline BipartiteGraph butterfly() {
  std::vector<Edge> e{{1, 3}, {1, 5}, {2, 3}, {2, 6}, {4, 3}, {4, 5}, {4, 6}};
  return build_bipartite({1, 2, 4}, {3, 5, 6}, e);
}

// 1-2-3-4-5
inline BipartiteGraph path5() {
  std::vector<Edge> e{{1, 2}, {3, 2}, {3, 4}, {5, 4}};
  return build_bipartite({1, 3, 5}, {2, 4}, e);
}

// N̄(2) = {5,7}, N̄(3) = {6,7}; stars 1 and 4
inline BipartiteGraph two_fan() {
  std::vector<Edge> e{{1, 4}, {1, 5}, {1, 6}, {1, 7}, {2, 4}, {3, 4}, {2, 6}, {3, 5}};
  return build_bipartite({1, 2, 3}, {4, 5, 6, 7}, e);
}

// K_{k,k} minus the matching i -- k+i
inline BipartiteGraph crown(VertexId k) {
  std::vector<VertexId> p1, p2;
  std::vector<Edge> e;
  for (VertexId i = 1; i <= k; ++i) {
    p1.push_back(i);
    p2.push_back(k + i);
    for (VertexId j = 1; j <= k; ++j)
      if (i != j) e.emplace_back(i, k + j);
  }
  return build_bipartite(p1, p2, e);
}

inline BipartiteGraph complete(VertexId a, VertexId b) {
  std::vector<VertexId> p1, p2;
  std::vector<Edge> e;
  for (VertexId i = 0; i < a; ++i) p1.push_back(i);
  for (VertexId j = 0; j < b; ++j) p2.push_back(a + j);
  for (auto u : p1)
    for (auto v : p2) e.emplace_back(u, v);
  return build_bipartite(p1, p2, e);
}

// Random connected bipartite graph with a uniformly drawn edge count.
inline BipartiteGraph random_graph(Rng& rng, std::size_t a, std::size_t b) {
  auto [lo, hi] = connected_bipartite_bounds(a, b);
  std::uniform_int_distribution<std::size_t> m(lo, hi);
  return random_connected_bipartite(a, b, m(rng), rng);
}

// Possibly disconnected bipartite graph, each cross edge kept with probability p.
inline BipartiteGraph loose_graph(Rng& rng, std::size_t a, std::size_t b, double p) {
  std::vector<VertexId> p1, p2;
  std::vector<Edge> e;
  for (VertexId i = 0; i < a; ++i) p1.push_back(i);
  for (VertexId j = 0; j < b; ++j) p2.push_back(static_cast<VertexId>(a) + j);
  std::bernoulli_distribution keep(p);
  for (auto u : p1)
    for (auto v : p2)
      if (keep(rng)) e.emplace_back(u, v);
  return build_bipartite(p1, p2, e);
}

}  // namespace fixtures
