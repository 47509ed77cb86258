#pragma once

// Deterministic Partition Connector: an f-factor H connects Q iff some
// spanning tree T of G/Q extends to an f-factor, so try every tree.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <type_traits>
#include <vector>

#include "factorforge/factor.hpp"
#include "factorforge/graph.hpp"
#include "factorforge/union_find.hpp"

namespace factorforge {

/// Calls fn(std::span<const EdgeId>) for every (|Q|-1)-subset of cross edges
/// whose image in G/Q is a spanning tree, in lexicographic order of edge
/// ids. fn may return bool; returning true stops the enumeration. Returns
/// the number of trees yielded.
template <class Fn>
std::size_t for_each_quotient_spanning_tree(const Graph& g, const Partition& q, Fn&& fn) {
  if (q.vertex_count() != g.vertex_count()) throw InvalidPartition("partition does not cover the graph");
  const std::size_t need = q.size() == 0 ? 0 : q.size() - 1;
  std::vector<EdgeId> cross;
  for (EdgeId e : g.active_edges())
    if (q.part_of(g.edge(e).u) != q.part_of(g.edge(e).v)) cross.push_back(e);

  RollbackUnionFind uf(q.size());
  std::vector<EdgeId> chosen;
  std::size_t yielded = 0;
  bool stop = false;

  auto emit = [&] {
    ++yielded;
    if constexpr (std::is_same_v<std::invoke_result_t<Fn&, std::span<const EdgeId>>, bool>) {
      stop = fn(std::span<const EdgeId>(chosen));
    } else {
      fn(std::span<const EdgeId>(chosen));
    }
  };

  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == need) {
      emit();
      return;
    }
    // Not enough edges left to finish.
    for (std::size_t i = from; i + (need - chosen.size()) <= cross.size() && !stop; ++i) {
      const auto& ed = g.edge(cross[i]);
      if (!uf.unite(q.part_of(ed.u), q.part_of(ed.v))) continue;
      chosen.push_back(cross[i]);
      self(self, i + 1);
      chosen.pop_back();
      uf.rollback();
    }
  };
  rec(rec, 0);
  return yielded;
}

struct PcStats {
  std::size_t trees_examined = 0;
  std::size_t factor_queries = 0;
};

/// An f-factor of g connecting q, or nullopt when none exists.
inline std::optional<FactorSubgraph> pc_deterministic(const Graph& g, std::span<const int> demand, const Partition& q,
                                                      PcStats* stats = nullptr) {
  if (demand.size() != g.vertex_count()) throw std::invalid_argument("demand size does not match graph");
  PcStats local;
  PcStats& st = stats ? *stats : local;
  std::optional<FactorSubgraph> found;
  if (detail::demand_trivially_infeasible(g, demand)) return found;

  // A tree containing an edge that admits no f-factor at all can be skipped.
  std::set<EdgeId> dead;
  if (q.size() >= 3) {
    for (EdgeId e : g.active_edges()) {
      if (q.part_of(g.edge(e).u) == q.part_of(g.edge(e).v)) continue;
      ++st.factor_queries;
      const EdgeId one[] = {e};
      if (!find_f_factor_containing(g, demand, one)) dead.insert(e);
    }
  }
  for_each_quotient_spanning_tree(g, q, [&](std::span<const EdgeId> tree) {
    ++st.trees_examined;
    for (EdgeId e : tree)
      if (dead.count(e)) return false;
    ++st.factor_queries;
    auto h = find_f_factor_containing(g, demand, tree);
    if (h) {
      found = std::move(h);
      return true;
    }
    return false;
  });
  if (found) FF_ENSURE(connects(*found, q), "deterministic connector returned a factor that misses a part");
  return found;
}

inline std::optional<FactorSubgraph> pc_deterministic(const Graph& g, const DegreeSpec& f, const Partition& q,
                                                      PcStats* stats = nullptr) {
  return pc_deterministic(g, f.values(), q, stats);
}

// Results keep a reference to the host graph, so temporaries are rejected.
template <class... A>
void pc_deterministic(const Graph&&, A&&...) = delete;

}  // namespace factorforge
