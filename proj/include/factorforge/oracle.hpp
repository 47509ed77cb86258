#pragma once

// Exhaustive reference solvers for small instances. They share nothing
// with the polynomial-time code beyond the graph types.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "factorforge/errors.hpp"
#include "factorforge/graph.hpp"

namespace factorforge {

inline constexpr std::size_t kBruteForceEdgeLimit = 26;
inline constexpr std::size_t kHamiltonVertexLimit = 20;

namespace detail {

// Depth-first over edges in id order, each either taken or skipped, pruning
// as soon as some vertex can no longer reach its demand exactly.
inline std::optional<FactorSubgraph> brute_force_search(const Graph& g, std::span<const int> demand,
                                                        const std::function<bool(const FactorSubgraph&)>& accept) {
  const std::vector<EdgeId> edges = g.active_edges();
  if (edges.size() > kBruteForceEdgeLimit) {
    throw SizeGuardExceeded("brute force limited to " + std::to_string(kBruteForceEdgeLimit) + " edges, got " +
                            std::to_string(edges.size()));
  }
  const std::size_t n = g.vertex_count();
  if (demand.size() != n) throw std::invalid_argument("demand size does not match graph");
  std::vector<int> need(demand.begin(), demand.end()), open(n, 0);
  for (EdgeId e : edges) {
    ++open[g.edge(e).u];
    ++open[g.edge(e).v];
  }
  for (std::size_t v = 0; v < n; ++v)
    if (need[v] < 0 || need[v] > open[v]) return std::nullopt;

  FactorSubgraph h(g);
  std::optional<FactorSubgraph> found;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == edges.size()) {
      if (accept(h)) {
        found = h;
        return true;
      }
      return false;
    }
    const auto [u, v] = g.edge(edges[i]);
    --open[u];
    --open[v];
    bool done = false;
    if (need[u] > 0 && need[v] > 0) {
      --need[u];
      --need[v];
      h.insert(edges[i]);
      if (need[u] <= open[u] && need[v] <= open[v]) done = self(self, i + 1);
      h.erase(edges[i]);
      ++need[u];
      ++need[v];
    }
    if (!done && need[u] <= open[u] && need[v] <= open[v]) done = self(self, i + 1);
    ++open[u];
    ++open[v];
    return done;
  };
  rec(rec, 0);
  return found;
}

}  // namespace detail

/// A connected f-factor of g, or nullopt. Exact; at most 26 edges.
inline std::optional<FactorSubgraph> brute_force_cff(const Graph& g, const DegreeSpec& f) {
  return detail::brute_force_search(g, f.values(), [](const FactorSubgraph& h) {
    return h.host().vertex_count() == 0 || components(h).size() == 1;
  });
}

/// An f-factor of g connecting q, or nullopt. Exact; at most 26 edges.
inline std::optional<FactorSubgraph> brute_force_pc(const Graph& g, const DegreeSpec& f, const Partition& q) {
  if (q.vertex_count() != g.vertex_count()) throw InvalidPartition("partition does not cover the graph");
  return detail::brute_force_search(g, f.values(), [&q](const FactorSubgraph& h) { return connects(h, q); });
}

// Results keep a reference to the host graph, so temporaries are rejected.
template <class... A>
void brute_force_cff(const Graph&&, A&&...) = delete;
template <class... A>
void brute_force_pc(const Graph&&, A&&...) = delete;

/// Hamiltonian cycle test by dynamic programming over vertex subsets.
inline bool has_hamiltonian_cycle(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kHamiltonVertexLimit) throw SizeGuardExceeded("Hamiltonian check limited to 20 vertices");
  if (n < 3) return false;
  std::vector<std::uint32_t> adj(n, 0);
  for (EdgeId e : g.active_edges()) {
    adj[g.edge(e).u] |= 1U << g.edge(e).v;
    adj[g.edge(e).v] |= 1U << g.edge(e).u;
  }
  // reach[mask] = set of end vertices of paths from 0 covering exactly mask.
  const std::uint32_t full = (1U << n) - 1;
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  reach[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; mask += 2) {
    const std::uint32_t ends = reach[mask];
    if (!ends) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (!((ends >> v) & 1U)) continue;
      std::uint32_t next = adj[v] & ~mask;
      while (next) {
        const int w = std::countr_zero(next);
        next &= next - 1;
        reach[mask | (1U << w)] |= 1U << w;
      }
    }
  }
  return (reach[full] & adj[0]) != 0;
}

}  // namespace factorforge
