#pragma once

// Tutte's f-blowup: perfect matchings of the blowup correspond to f-factors
// of the host. For every host vertex v there is a block A(v) of f(v) core
// vertices; every host edge e = (v, w) contributes a gadget pair (v_e, w_e)
// with v_e adjacent to A(v) and w_e, and w_e adjacent to A(w) and v_e.
//
// The blowup is stored implicitly (offsets into the host), so neighbor
// enumeration is cheap and nothing quadratic in f is allocated.

#include <cstddef>
#include <span>
#include <vector>

#include "factorforge/graph.hpp"
#include "factorforge/matching.hpp"

namespace factorforge {

enum class BlowupRole : unsigned char { kCore, kGadgetLow, kGadgetHigh };

/// What a blowup vertex stands for: a copy of a host vertex (kCore, index =
/// host vertex, copy = position in A(v)) or one side of a host edge's gadget
/// (index = host edge; kGadgetLow is the endpoint with the smaller id).
struct BlowupVertex {
  BlowupRole role;
  std::uint32_t index;
  std::uint32_t copy;
};

struct BlowupEdge {
  std::size_t a;
  std::size_t b;
};

class BlowupGraph {
 public:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  BlowupGraph(const Graph& host, std::span<const int> demand, std::span<const char> vertex_in)
      : host_(&host), demand_(demand.begin(), demand.end()), vertex_in_(vertex_in.begin(), vertex_in.end()),
        core_offset_(host.vertex_count(), kAbsent), gadget_offset_(host.edge_count(), kAbsent) {
    std::size_t next = 0;
    for (Vertex v = 0; v < host.vertex_count(); ++v) {
      if (!vertex_in_[v]) continue;
      core_offset_[v] = next;
      for (int i = 0; i < demand_[v]; ++i) back_.push_back({BlowupRole::kCore, v, static_cast<std::uint32_t>(i)});
      next += static_cast<std::size_t>(demand_[v]);
    }
    for (EdgeId e = 0; e < host.edge_count(); ++e) {
      const auto& ed = host.edge(e);
      if (!host.active(e) || !vertex_in_[ed.u] || !vertex_in_[ed.v]) continue;
      gadget_offset_[e] = next;
      back_.push_back({BlowupRole::kGadgetLow, e, 0});
      back_.push_back({BlowupRole::kGadgetHigh, e, 0});
      next += 2;
      ++gadget_count_;
    }
  }

  const Graph& host() const { return *host_; }
  std::span<const int> demand() const { return demand_; }
  bool includes_vertex(Vertex v) const { return vertex_in_[v] != 0; }
  bool includes_edge(EdgeId e) const { return gadget_offset_[e] != kAbsent; }

  std::size_t vertex_count() const { return back_.size(); }
  std::size_t gadget_pair_count() const { return gadget_count_; }
  const BlowupVertex& describe(std::size_t b) const { return back_[b]; }

  /// First vertex of A(v); A(v) occupies f(v) consecutive ids.
  std::size_t core(Vertex v) const { return core_offset_[v]; }
  /// v_e for the lower endpoint of e; w_e is gadget(e) + 1.
  std::size_t gadget(EdgeId e) const { return gadget_offset_[e]; }

  template <class Fn>
  void for_each_neighbor(std::size_t b, Fn&& fn) const {
    const BlowupVertex& d = back_[b];
    if (d.role == BlowupRole::kCore) {
      const Vertex v = d.index;
      for (EdgeId e : host_->incident(v)) {
        const std::size_t g = gadget_offset_[e];
        if (g == kAbsent) continue;
        fn(host_->edge(e).u == v ? g : g + 1);
      }
      return;
    }
    const EdgeId e = d.index;
    const Vertex owner = d.role == BlowupRole::kGadgetLow ? host_->edge(e).u : host_->edge(e).v;
    const std::size_t base = core_offset_[owner];
    for (int i = 0; i < demand_[owner]; ++i) fn(base + static_cast<std::size_t>(i));
    fn(d.role == BlowupRole::kGadgetLow ? b + 1 : b - 1);
  }

  /// Explicit edge list. Per included host edge, in canonical order: the
  /// A(u)-u_e edges, the pair edge, then the v_e-A(v) edges.
  std::vector<BlowupEdge> edges() const {
    std::vector<BlowupEdge> out;
    for (EdgeId e = 0; e < host_->edge_count(); ++e) {
      const std::size_t g = gadget_offset_[e];
      if (g == kAbsent) continue;
      const auto& ed = host_->edge(e);
      for (int i = 0; i < demand_[ed.u]; ++i) out.push_back({core_offset_[ed.u] + static_cast<std::size_t>(i), g});
      out.push_back({g, g + 1});
      for (int i = 0; i < demand_[ed.v]; ++i) out.push_back({g + 1, core_offset_[ed.v] + static_cast<std::size_t>(i)});
    }
    return out;
  }

  AdjacencyGraph materialize() const {
    AdjacencyGraph a(vertex_count());
    for (const auto& e : edges()) a.add_edge(e.a, e.b);
    return a;
  }

 private:
  const Graph* host_;
  std::vector<int> demand_;
  std::vector<char> vertex_in_;
  std::vector<std::size_t> core_offset_;
  std::vector<std::size_t> gadget_offset_;
  std::vector<BlowupVertex> back_;
  std::size_t gadget_count_ = 0;
};

namespace detail {

inline void check_demand_fits(const Graph& g, std::span<const int> demand) {
  if (demand.size() != g.vertex_count()) throw std::invalid_argument("demand size does not match graph");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (demand[v] < 0) throw InfeasibleDemand("negative demand at vertex " + std::to_string(v));
    if (static_cast<std::size_t>(demand[v]) > g.degree(v)) {
      throw InfeasibleDemand("vertex " + std::to_string(v) + " demands " + std::to_string(demand[v]) +
                             " but has degree " + std::to_string(g.degree(v)));
    }
  }
}

}  // namespace detail

/// B_f(G) over the active edges of g. Throws InfeasibleDemand when some
/// f(v) exceeds d_G(v) or is negative.
inline BlowupGraph build_blowup(const Graph& g, std::span<const int> demand) {
  detail::check_demand_fits(g, demand);
  std::vector<char> all(g.vertex_count(), 1);
  return BlowupGraph(g, demand, all);
}

inline BlowupGraph build_blowup(const Graph& g, const DegreeSpec& f) { return build_blowup(g, f.values()); }

// The blowup keeps a reference to its host.
BlowupGraph build_blowup(const Graph&&, std::span<const int>) = delete;
BlowupGraph build_blowup(const Graph&&, const DegreeSpec&) = delete;

/// Blowup of G induced by the host vertex set `subset` (a mask over host
/// vertices): gadget pairs of edges leaving the subset are dropped, which
/// leaves exactly the blowup of G[subset] with the same demands.
inline BlowupGraph induced_blowup(const BlowupGraph& b, std::span<const char> subset) {
  const Graph& g = b.host();
  if (subset.size() != g.vertex_count()) throw std::invalid_argument("subset mask size does not match host");
  std::vector<char> mask(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) mask[v] = (subset[v] && b.includes_vertex(v)) ? 1 : 0;
  return BlowupGraph(g, b.demand(), mask);
}

inline BlowupGraph induced_blowup(const BlowupGraph& b, std::span<const Vertex> subset) {
  std::vector<char> mask(b.host().vertex_count(), 0);
  for (Vertex v : subset) mask.at(v) = 1;
  return induced_blowup(b, std::span<const char>(mask));
}

}  // namespace factorforge
