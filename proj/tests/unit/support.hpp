#pragma once

// Naive reference computations used only by the tests. They deliberately
// avoid the library's search code: plain enumeration over all subsets.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <random>
#include <utility>
#include <vector>

#include "factorforge/factorforge.hpp"

namespace fft {

using namespace factorforge;

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  EdgeList e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (coin(rng)) e.emplace_back(a, b);
  return Graph(n, e);
}

// Every subset of edges, checked directly. Only for m <= 20.
template <class Accept>
bool exists_subset(const Graph& g, std::span<const int> f, Accept&& accept) {
  const auto edges = g.active_edges();
  const std::uint64_t total = std::uint64_t{1} << edges.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<int> d(g.vertex_count(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if ((mask >> i) & 1U) {
        ++d[g.edge(edges[i]).u];
        ++d[g.edge(edges[i]).v];
      }
    bool ok = true;
    for (Vertex v = 0; v < g.vertex_count() && ok; ++v) ok = d[v] == f[v];
    if (!ok) continue;
    FactorSubgraph h(g);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if ((mask >> i) & 1U) h.insert(edges[i]);
    if (accept(h)) return true;
  }
  return false;
}

inline bool naive_has_f_factor(const Graph& g, std::span<const int> f) {
  return exists_subset(g, f, [](const FactorSubgraph&) { return true; });
}

inline bool naive_has_connected_f_factor(const Graph& g, std::span<const int> f) {
  return exists_subset(g, f, [](const FactorSubgraph& h) { return components(h).size() == 1; });
}

inline bool naive_has_connector(const Graph& g, std::span<const int> f, const Partition& q) {
  return exists_subset(g, f, [&](const FactorSubgraph& h) { return connects(h, q); });
}

// Maximum matching size by dynamic programming over vertex subsets.
inline std::size_t naive_matching_size(const AdjacencyGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : g.neighbors(v)) adj[v] |= 1U << w;
  std::vector<int> best(std::size_t{1} << n, 0);
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(1U << v);
    int b = best[rest];
    for (std::uint32_t nb = adj[v] & rest; nb; nb &= nb - 1) {
      const int w = std::countr_zero(nb);
      b = std::max(b, 1 + best[rest & ~(1U << w)]);
    }
    best[mask] = b;
  }
  return static_cast<std::size_t>(best.back());
}

inline bool is_valid_matching(const AdjacencyGraph& g, const Matching& m) {
  std::size_t count = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const std::size_t w = m.mate[v];
    if (w == kUnmatched) continue;
    if (w >= g.vertex_count() || m.mate[w] != v) return false;
    const auto& nb = g.neighbors(v);
    if (std::find(nb.begin(), nb.end(), w) == nb.end()) return false;
    ++count;
  }
  return count == 2 * m.size;
}

inline FactorSubgraph subgraph_of(const Graph& g, const EdgeList& pairs) {
  FactorSubgraph h(g);
  for (auto [a, b] : pairs) h.insert(*g.find_edge(a, b));
  return h;
}

inline Partition two_triangle_parts() { return Partition(6, {{0, 1, 2}, {3, 4, 5}}); }

inline Graph two_triangles() { return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

// Hexagon 0-1-4-3-5-2-0 inside the two-triangles-plus-matching graph.
inline const EdgeList kHexagon{{0, 1}, {1, 4}, {3, 4}, {3, 5}, {2, 5}, {0, 2}};
inline const EdgeList kTriangles{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};

}  // namespace fft
