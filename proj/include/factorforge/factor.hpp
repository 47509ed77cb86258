#pragma once

// f-factors through the blowup: find a perfect matching M of B_f(G) and keep
// host edge e exactly when its pair edge (v_e, w_e) is not in M.

#include <optional>
#include <span>
#include <vector>

#include "factorforge/blowup.hpp"
#include "factorforge/graph.hpp"
#include "factorforge/matching.hpp"

namespace factorforge {

namespace detail {

// Greedy degree-constrained subgraph translated into a blowup matching:
// taken edges match both gadget ends into their core blocks, skipped edges
// match the pair edge. Only core vertices stay exposed.
inline std::vector<std::size_t> greedy_blowup_matching(const BlowupGraph& b) {
  const Graph& g = b.host();
  std::vector<std::size_t> mate(b.vertex_count(), kUnmatched);
  std::vector<int> used(g.vertex_count(), 0);
  auto demand = b.demand();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!b.includes_edge(e)) continue;
    const auto& ed = g.edge(e);
    const std::size_t lo = b.gadget(e), hi = lo + 1;
    if (used[ed.u] < demand[ed.u] && used[ed.v] < demand[ed.v]) {
      const std::size_t cu = b.core(ed.u) + static_cast<std::size_t>(used[ed.u]++);
      const std::size_t cv = b.core(ed.v) + static_cast<std::size_t>(used[ed.v]++);
      mate[lo] = cu;
      mate[cu] = lo;
      mate[hi] = cv;
      mate[cv] = hi;
    } else {
      mate[lo] = hi;
      mate[hi] = lo;
    }
  }
  return mate;
}

inline FactorSubgraph decode_factor(const BlowupGraph& b, const Matching& m) {
  const Graph& g = b.host();
  FactorSubgraph h(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!b.includes_edge(e)) continue;
    const std::size_t lo = b.gadget(e);
    if (m.mate[lo] != lo + 1) h.insert(e);
  }
  return h;
}

inline bool demand_trivially_infeasible(const Graph& g, std::span<const int> demand) {
  long long total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (demand[v] < 0 || static_cast<std::size_t>(demand[v]) > g.degree(v)) return true;
    total += demand[v];
  }
  return (total & 1) != 0;
}

}  // namespace detail

/// Some f-factor of the active edges of g, or nullopt when none exists.
/// Negative demands are treated as infeasible.
inline std::optional<FactorSubgraph> find_f_factor(const Graph& g, std::span<const int> demand) {
  if (demand.size() != g.vertex_count()) throw std::invalid_argument("demand size does not match graph");
  if (detail::demand_trivially_infeasible(g, demand)) return std::nullopt;
  const BlowupGraph b = build_blowup(g, demand);
  const Matching m = max_matching(b, detail::greedy_blowup_matching(b));
  if (!m.perfect()) return std::nullopt;
  FactorSubgraph h = detail::decode_factor(b, m);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    FF_ENSURE(h.degree(v) == demand[v], "decoded factor misses demand at vertex " + std::to_string(v));
  return h;
}

inline std::optional<FactorSubgraph> find_f_factor(const Graph& g, const DegreeSpec& f) {
  return find_f_factor(g, f.values());
}

/// An f-factor containing every edge of `forced`, computed as forced plus an
/// f'-factor of G - forced with f'(v) = f(v) - d_forced(v).
inline std::optional<FactorSubgraph> find_f_factor_containing(const Graph& g, std::span<const int> demand,
                                                              std::span<const EdgeId> forced) {
  if (demand.size() != g.vertex_count()) throw std::invalid_argument("demand size does not match graph");
  std::vector<int> residual(demand.begin(), demand.end());
  for (EdgeId e : forced) {
    if (e >= g.edge_count() || !g.active(e)) {
      throw std::invalid_argument("forced edge " + std::to_string(e) + " is not an edge of the graph");
    }
    --residual[g.edge(e).u];
    --residual[g.edge(e).v];
  }
  for (int r : residual)
    if (r < 0) return std::nullopt;
  const Graph rest = forced.empty() ? g : g.without_edges(forced);
  auto partial = find_f_factor(rest, residual);
  if (!partial) return std::nullopt;
  FactorSubgraph h(g);
  for (EdgeId e : partial->edges()) h.insert(e);
  for (EdgeId e : forced) h.insert(e);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    FF_ENSURE(h.degree(v) == demand[v], "forced-edge factor misses demand at vertex " + std::to_string(v));
  return h;
}

inline std::optional<FactorSubgraph> find_f_factor_containing(const Graph& g, const DegreeSpec& f,
                                                              std::span<const EdgeId> forced) {
  return find_f_factor_containing(g, f.values(), forced);
}

// Results keep a reference to the host graph, so temporaries are rejected.
template <class... A>
void find_f_factor(const Graph&&, A&&...) = delete;
template <class... A>
void find_f_factor_containing(const Graph&&, A&&...) = delete;

}  // namespace factorforge
