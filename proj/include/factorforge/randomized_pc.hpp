#pragma once

// Randomized Partition Connector. The existence test evaluates P_Q at a
// fresh random point: a nonzero value proves that some f-factor connects Q,
// a zero value is wrong with probability at most deg(P_Q) / |F|.
// The constructive version fixes edges leaving part 0 one at a time,
// merging the parts they join, as long as the test keeps saying yes.

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "factorforge/factor.hpp"
#include "factorforge/gf2.hpp"
#include "factorforge/graph.hpp"
#include "factorforge/tutte.hpp"

namespace factorforge {

struct RandomizedPcStats {
  std::size_t existence_tests = 0;
  std::size_t polynomial_terms = 0;
  unsigned field_bits = 0;
};

/// True means an f-factor connecting q certainly exists. False is always
/// right on no-instances and wrong with small probability on yes-instances.
/// field_bits = 0 picks the size from the vertex count.
inline bool exists_pc_randomized(const Graph& g, std::span<const int> demand, const Partition& q,
                                 std::mt19937_64& rng, unsigned field_bits = 0,
                                 RandomizedPcStats* stats = nullptr) {
  if (demand.size() != g.vertex_count()) throw std::invalid_argument("demand size does not match graph");
  if (q.vertex_count() != g.vertex_count()) throw InvalidPartition("partition does not cover the graph");
  const unsigned bits = field_bits ? field_bits : field_bits_for(g.vertex_count());
  if (stats) {
    ++stats->existence_tests;
    stats->field_bits = bits;
  }
  if (detail::demand_trivially_infeasible(g, demand)) return false;
  return with_field(bits, [&](const auto& field) {
    const TutteAssignment a(g, demand, field, rng);
    PqStats ps;
    const bool nonzero = !field.is_zero(eval_PQ(g, demand, q, a, field, &ps));
    if (stats) stats->polynomial_terms += ps.terms;
    return nonzero;
  });
}

inline bool exists_pc_randomized(const Graph& g, const DegreeSpec& f, const Partition& q, std::mt19937_64& rng,
                                 unsigned field_bits = 0, RandomizedPcStats* stats = nullptr) {
  return exists_pc_randomized(g, f.values(), q, rng, field_bits, stats);
}

/// An f-factor connecting q, or nullopt. A returned factor is always
/// verified; nullopt may be a false negative.
inline std::optional<FactorSubgraph> pc_randomized(const Graph& g, std::span<const int> demand, const Partition& q,
                                                   std::mt19937_64& rng, unsigned field_bits = 0,
                                                   RandomizedPcStats* stats = nullptr) {
  if (!exists_pc_randomized(g, demand, q, rng, field_bits, stats)) return std::nullopt;

  Graph cur = g;
  std::vector<int> cur_demand(demand.begin(), demand.end());
  Partition cur_q = q;
  std::vector<EdgeId> fixed;
  while (cur_q.size() > 1) {
    bool advanced = false;
    for (EdgeId e : cur.active_edges()) {
      const auto [u, v] = cur.edge(e);
      const std::size_t pu = cur_q.part_of(u), pv = cur_q.part_of(v);
      if ((pu == 0) == (pv == 0)) continue;
      if (cur_demand[u] < 1 || cur_demand[v] < 1) continue;
      const EdgeId drop[] = {e};
      Graph sub = cur.without_edges(drop);
      std::vector<int> sub_demand = cur_demand;
      --sub_demand[u];
      --sub_demand[v];
      Partition sub_q = cur_q.merged(0, pu == 0 ? pv : pu);
      if (!exists_pc_randomized(sub, sub_demand, sub_q, rng, field_bits, stats)) continue;
      fixed.push_back(e);
      cur = std::move(sub);
      cur_demand = std::move(sub_demand);
      cur_q = std::move(sub_q);
      advanced = true;
      break;
    }
    if (!advanced) return std::nullopt;
  }

  auto rest = find_f_factor(cur, cur_demand);
  // A nonzero evaluation certifies that this factor exists.
  FF_ENSURE(rest.has_value(), "existence test said yes but no f-factor remains");
  FactorSubgraph h(g);
  for (EdgeId e : rest->edges()) h.insert(e);
  for (EdgeId e : fixed) h.insert(e);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    FF_ENSURE(h.degree(v) == demand[v], "randomized connector returned wrong degree at " + std::to_string(v));
  FF_ENSURE(connects(h, q), "randomized connector returned a factor that misses a part");
  return h;
}

inline std::optional<FactorSubgraph> pc_randomized(const Graph& g, const DegreeSpec& f, const Partition& q,
                                                   std::mt19937_64& rng, unsigned field_bits = 0,
                                                   RandomizedPcStats* stats = nullptr) {
  return pc_randomized(g, f.values(), q, rng, field_bits, stats);
}

// Results keep a reference to the host graph, so temporaries are rejected.
template <class... A>
void pc_randomized(const Graph&&, A&&...) = delete;

}  // namespace factorforge
