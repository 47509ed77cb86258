#pragma once

// Red/blue colored symmetric differences, alternating circuits, and the
// switching step that moves an f-factor toward another one while keeping
// most of each vertex's old neighbors.

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "factorforge/errors.hpp"
#include "factorforge/graph.hpp"
#include "factorforge/union_find.hpp"

namespace factorforge {

enum class Color : unsigned char { kRed = 0, kBlue = 1 };

inline Color opposite(Color c) { return c == Color::kRed ? Color::kBlue : Color::kRed; }

struct ColoredEdge {
  Vertex u;
  Vertex v;
  Color color;
  EdgeId host_edge;

  Vertex other(Vertex x) const { return x == u ? v : u; }
};

/// Multigraph with red/blue edges on host vertices 0..n-1. Local edge
/// indices are positions in edges(); every edge remembers its host edge id.
class ColoredMultigraph {
 public:
  explicit ColoredMultigraph(std::size_t n = 0) : red_(n), blue_(n) {}

  std::size_t add_edge(Vertex u, Vertex v, Color c, EdgeId host_edge) {
    if (u == v) throw std::invalid_argument("colored graph cannot hold loops");
    const std::size_t id = edges_.size();
    edges_.push_back({u, v, c, host_edge});
    auto& inc = c == Color::kRed ? red_ : blue_;
    inc[u].push_back(id);
    inc[v].push_back(id);
    return id;
  }

  std::size_t vertex_count() const { return red_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const ColoredEdge& edge(std::size_t i) const { return edges_[i]; }
  std::span<const ColoredEdge> edges() const { return edges_; }
  const std::vector<std::size_t>& red_incident(Vertex v) const { return red_[v]; }
  const std::vector<std::size_t>& blue_incident(Vertex v) const { return blue_[v]; }
  std::size_t red_degree(Vertex v) const { return red_[v].size(); }
  std::size_t blue_degree(Vertex v) const { return blue_[v].size(); }

  /// d_red(v) == d_blue(v) at every vertex. For a connected colored graph
  /// this is equivalent to having an alternating Eulerian circuit.
  bool balanced() const {
    for (std::size_t v = 0; v < red_.size(); ++v)
      if (red_[v].size() != blue_[v].size()) return false;
    return true;
  }

  /// Edge-index lists of the components that carry at least one edge,
  /// ordered by their smallest edge index.
  std::vector<std::vector<std::size_t>> components() const {
    UnionFind uf(vertex_count());
    for (const auto& e : edges_) uf.unite(e.u, e.v);
    std::unordered_map<std::size_t, std::size_t> slot;
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto [it, fresh] = slot.try_emplace(uf.find(edges_[i].u), out.size());
      if (fresh) out.emplace_back();
      out[it->second].push_back(i);
    }
    return out;
  }

  std::optional<std::size_t> local_index(EdgeId host_edge) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].host_edge == host_edge) return i;
    return std::nullopt;
  }

 private:
  std::vector<ColoredEdge> edges_;
  std::vector<std::vector<std::size_t>> red_;
  std::vector<std::vector<std::size_t>> blue_;
};

/// Closed trail given as a cyclic sequence of local edge indices; edges[0]
/// leaves `start`.
struct AlternatingCircuit {
  Vertex start = 0;
  std::vector<std::size_t> edges;
};

/// E(H) xor E(H2) with H-only edges red and H2-only edges blue.
inline ColoredMultigraph color_symmetric_difference(const FactorSubgraph& h, const FactorSubgraph& h2) {
  const Graph& g = h.host();
  if (&g != &h2.host()) throw std::invalid_argument("subgraphs of different hosts");
  ColoredMultigraph a(g.vertex_count());
  bool same_degrees = true;
  for (Vertex v = 0; v < g.vertex_count(); ++v) same_degrees = same_degrees && h.degree(v) == h2.degree(v);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const bool in1 = h.contains(e), in2 = h2.contains(e);
    if (in1 == in2) continue;
    a.add_edge(g.edge(e).u, g.edge(e).v, in1 ? Color::kRed : Color::kBlue, e);
  }
  if (same_degrees) FF_ENSURE(a.balanced(), "equal degree sequences must give balanced colors");
  return a;
}

/// Checks that `c` is an alternating closed trail of `a`: consecutive edges
/// meet and alternate in color (cyclically), no edge repeats. With
/// `minimal`, additionally every vertex meets at most two red edges.
inline bool is_alternating_circuit(const ColoredMultigraph& a, const AlternatingCircuit& c, bool minimal = false) {
  const std::size_t len = c.edges.size();
  if (len == 0 || len % 2 != 0) return false;
  std::vector<char> used(a.edge_count(), 0);
  std::unordered_map<Vertex, int> red_at;
  Vertex at = c.start;
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t idx = c.edges[i];
    if (idx >= a.edge_count() || used[idx]) return false;
    used[idx] = 1;
    const ColoredEdge& e = a.edge(idx);
    if (e.u != at && e.v != at) return false;
    if (a.edge(c.edges[(i + 1) % len]).color == e.color) return false;
    if (e.color == Color::kRed) {
      ++red_at[e.u];
      ++red_at[e.v];
    }
    at = e.other(at);
  }
  if (at != c.start) return false;
  if (minimal)
    for (auto [v, k] : red_at)
      if (k > 2) return false;
  return true;
}

/// Alternating Eulerian circuit of one balanced connected component.
///
/// Pairs red and blue edge ends at every vertex (a transition system), which
/// splits the component into alternating closed trails, then swaps
/// transitions at shared vertices until a single trail remains.
inline AlternatingCircuit alternating_euler_circuit(const ColoredMultigraph& a, std::span<const std::size_t> component) {
  if (component.empty()) return {};
  // Edge end 2i sits at edge(i).u, end 2i+1 at edge(i).v.
  std::unordered_map<std::size_t, std::size_t> partner;
  std::vector<Vertex> verts;
  for (std::size_t i : component) {
    verts.push_back(a.edge(i).u);
    verts.push_back(a.edge(i).v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto end_at = [&](std::size_t i, Vertex v) { return 2 * i + (a.edge(i).u == v ? 0 : 1); };
  for (Vertex v : verts) {
    const auto& r = a.red_incident(v);
    const auto& b = a.blue_incident(v);
    if (r.size() != b.size()) {
      throw NotAlternating("vertex " + std::to_string(v) + " has " + std::to_string(r.size()) + " red and " +
                           std::to_string(b.size()) + " blue edges");
    }
    for (std::size_t k = 0; k < r.size(); ++k) {
      const std::size_t x = end_at(r[k], v), y = end_at(b[k], v);
      partner[x] = y;
      partner[y] = x;
    }
  }

  // Label initial trails.
  std::unordered_map<std::size_t, std::size_t> trail_of;  // edge -> trail
  std::size_t trails = 0;
  for (std::size_t i : component) {
    if (trail_of.count(i)) continue;
    std::size_t end = 2 * i;
    do {
      trail_of[end / 2] = trails;
      end = partner.at(end ^ 1);
    } while (end / 2 != i);
    ++trails;
  }

  UnionFind uf(trails);
  for (Vertex v : verts) {
    const auto& r = a.red_incident(v);
    if (r.size() < 2) continue;
    const std::size_t r0 = end_at(r[0], v);
    for (std::size_t k = 1; k < r.size(); ++k) {
      const std::size_t rk = end_at(r[k], v);
      if (uf.same(trail_of[r0 / 2], trail_of[rk / 2])) continue;
      const std::size_t b0 = partner[r0], bk = partner[rk];
      partner[r0] = bk;
      partner[bk] = r0;
      partner[rk] = b0;
      partner[b0] = rk;
      uf.unite(trail_of[r0 / 2], trail_of[rk / 2]);
    }
  }

  AlternatingCircuit c;
  const std::size_t first = component.front();
  c.start = a.edge(first).u;
  std::size_t end = 2 * first;
  do {
    c.edges.push_back(end / 2);
    end = partner.at(end ^ 1);
  } while (end != 2 * first);
  if (c.edges.size() != component.size()) throw NotAlternating("component does not form a single circuit");
  return c;
}

/// Splits an alternating circuit into edge-disjoint minimal alternating
/// circuits (at most two red edges at every vertex).
///
/// Each pass through a vertex has a type (which color arrives). Two passes
/// of the same type bound a shorter alternating closed trail; walking the
/// circuit with a stack, such a trail is cut off as soon as the second pass
/// appears, so no emitted piece visits a vertex twice with the same type.
inline std::vector<AlternatingCircuit> split_minimal(const ColoredMultigraph& a, const AlternatingCircuit& c) {
  const std::size_t len = c.edges.size();
  std::vector<AlternatingCircuit> out;
  if (len == 0) return out;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::unordered_map<Vertex, std::array<std::size_t, 2>> open;
  auto slot = [&](Vertex v) -> std::array<std::size_t, 2>& {
    auto [it, fresh] = open.try_emplace(v, std::array<std::size_t, 2>{kNone, kNone});
    return it->second;
  };
  auto type_of = [&](std::size_t incoming) { return a.edge(incoming).color == Color::kRed ? 0 : 1; };

  std::vector<std::size_t> stack{c.edges[0]};
  std::vector<Vertex> pass_vertex{c.start};
  std::vector<int> pass_type{type_of(c.edges[len - 1])};
  slot(c.start)[pass_type[0]] = 0;
  Vertex at = a.edge(c.edges[0]).other(c.start);

  for (std::size_t i = 1; i < len; ++i) {
    const int t = type_of(c.edges[i - 1]);
    const std::size_t p = slot(at)[t];
    if (p != kNone) {
      AlternatingCircuit piece{at, {stack.begin() + static_cast<std::ptrdiff_t>(p), stack.end()}};
      out.push_back(std::move(piece));
      for (std::size_t q = p + 1; q < stack.size(); ++q) {
        auto& s = slot(pass_vertex[q]);
        if (s[pass_type[q]] == q) s[pass_type[q]] = kNone;
      }
      stack.resize(p);
      pass_vertex.resize(p);
      pass_type.resize(p);
    } else {
      slot(at)[t] = stack.size();
    }
    stack.push_back(c.edges[i]);
    pass_vertex.push_back(at);
    pass_type.push_back(t);
    at = a.edge(c.edges[i]).other(at);
  }
  out.push_back({pass_vertex[0], std::move(stack)});
  return out;
}

struct DecompositionCheck {
  bool edge_disjoint = true;
  bool alternating = true;
  bool minimal = true;
  bool covers_required = true;
  bool within_count = true;
  bool each_has_required = true;

  bool ok() const {
    return edge_disjoint && alternating && minimal && covers_required && within_count && each_has_required;
  }
};

/// Audits a decomposition against the required edge set (local indices).
inline DecompositionCheck check_decomposition(const ColoredMultigraph& a, std::span<const std::size_t> required,
                                              std::span<const AlternatingCircuit> circuits) {
  DecompositionCheck r;
  std::vector<char> used(a.edge_count(), 0), needed(a.edge_count(), 0);
  for (std::size_t s : required) needed.at(s) = 1;
  for (const auto& c : circuits) {
    r.alternating = r.alternating && is_alternating_circuit(a, c, false);
    r.minimal = r.minimal && is_alternating_circuit(a, c, true);
    bool has = false;
    for (std::size_t i : c.edges) {
      if (i >= a.edge_count()) {
        r.alternating = false;
        continue;
      }
      if (used[i]) r.edge_disjoint = false;
      used[i] = 1;
      has = has || needed[i];
    }
    r.each_has_required = r.each_has_required && has;
  }
  for (std::size_t s : required) r.covers_required = r.covers_required && used[s];
  std::vector<std::size_t> distinct(required.begin(), required.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  r.within_count = circuits.size() <= distinct.size();
  return r;
}

/// Edge-disjoint minimal alternating circuits of `a`, each containing an
/// edge of `required` (host edge ids), together covering all of them.
/// Throws NotAlternating when some component of `a` is not an alternating
/// circuit or a required edge is not in `a`.
inline std::vector<AlternatingCircuit> decompose_minimal_alternating(const ColoredMultigraph& a,
                                                                     std::span<const EdgeId> required) {
  if (!a.balanced()) throw NotAlternating("red and blue degrees differ");
  std::unordered_map<EdgeId, std::size_t> local;
  for (std::size_t i = 0; i < a.edge_count(); ++i) local[a.edge(i).host_edge] = i;
  std::vector<char> needed(a.edge_count(), 0);
  std::vector<std::size_t> required_local;
  for (EdgeId e : required) {
    auto it = local.find(e);
    if (it == local.end()) throw NotAlternating("required edge " + std::to_string(e) + " is not in the colored graph");
    needed[it->second] = 1;
    required_local.push_back(it->second);
  }

  std::vector<AlternatingCircuit> out;
  for (const auto& comp : a.components()) {
    const bool relevant = std::any_of(comp.begin(), comp.end(), [&](std::size_t i) { return needed[i] != 0; });
    if (!relevant) continue;
    for (auto& piece : split_minimal(a, alternating_euler_circuit(a, comp))) {
      // First-closed piece wins; pieces without a required edge are dropped.
      if (std::any_of(piece.edges.begin(), piece.edges.end(), [&](std::size_t i) { return needed[i] != 0; }))
        out.push_back(std::move(piece));
    }
  }
  const auto audit = check_decomposition(a, required_local, out);
  FF_ENSURE(audit.ok(), "minimal circuit decomposition failed its audit");
  return out;
}

/// Colored subgraph of `a` made of the given circuits.
inline ColoredMultigraph circuits_union(const ColoredMultigraph& a, std::span<const AlternatingCircuit> circuits) {
  ColoredMultigraph m(a.vertex_count());
  for (const auto& c : circuits)
    for (std::size_t i : c.edges) {
      const auto& e = a.edge(i);
      m.add_edge(e.u, e.v, e.color, e.host_edge);
    }
  return m;
}

/// Switching(H, M) = H xor M. M must be a switch on H: red edges in H, blue
/// edges outside H, every component an alternating circuit.
inline FactorSubgraph apply_switch(const FactorSubgraph& h, const ColoredMultigraph& m) {
  const Graph& g = h.host();
  if (m.vertex_count() != g.vertex_count()) throw InvalidSwitch("switch lives on a different vertex set");
  std::vector<char> seen(g.edge_count(), 0);
  for (const auto& e : m.edges()) {
    if (e.host_edge >= g.edge_count() || g.edge(e.host_edge) != Edge{std::min(e.u, e.v), std::max(e.u, e.v)}) {
      throw InvalidSwitch("switch edge does not match its host edge");
    }
    if (seen[e.host_edge]) throw InvalidSwitch("host edge " + std::to_string(e.host_edge) + " used twice");
    seen[e.host_edge] = 1;
    if ((e.color == Color::kRed) != h.contains(e.host_edge)) {
      throw InvalidSwitch("edge " + std::to_string(e.host_edge) +
                          (e.color == Color::kRed ? " is red but not in H" : " is blue but already in H"));
    }
  }
  if (!m.balanced()) throw InvalidSwitch("switch components are not alternating circuits");
  try {
    for (const auto& comp : m.components()) (void)alternating_euler_circuit(m, comp);
  } catch (const NotAlternating& ex) {
    throw InvalidSwitch(ex.what());
  }
  FactorSubgraph out = h;
  for (const auto& e : m.edges()) out.toggle(e.host_edge);
  for (Vertex v = 0; v < g.vertex_count(); ++v) FF_ENSURE(out.degree(v) == h.degree(v), "switch changed a degree");
  return out;
}

/// Smallest value of |N_after(v) ∩ Q'| - (|N_before(v) ∩ Q'| - 2(|Q|-1))
/// over all parts Q' of q and v in Q'. Non-negative means the bound holds.
inline long long degree_drop_slack(const FactorSubgraph& before, const FactorSubgraph& after, const Partition& q) {
  const Graph& g = before.host();
  const long long allowance = 2 * (static_cast<long long>(q.size()) - 1);
  long long slack = std::numeric_limits<long long>::max();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    long long nb = 0, na = 0;
    for (EdgeId e : g.incident(v)) {
      if (q.part_of(g.edge(e).other(v)) != q.part_of(v)) continue;
      nb += before.contains(e) ? 1 : 0;
      na += after.contains(e) ? 1 : 0;
    }
    slack = std::min(slack, na - (nb - allowance));
  }
  return g.vertex_count() == 0 ? 0 : slack;
}

/// Spanning tree of H/Q: BFS over parts from part 0, scanning cross edges in
/// canonical order. Returns nullopt when H does not connect Q.
inline std::optional<std::vector<EdgeId>> quotient_bfs_tree(const FactorSubgraph& h, const Partition& q) {
  const Graph& g = h.host();
  std::vector<std::vector<EdgeId>> by_part(q.size());
  for (EdgeId e : h.edges()) {
    const auto a = q.part_of(g.edge(e).u), b = q.part_of(g.edge(e).v);
    if (a == b) continue;
    by_part[a].push_back(e);
    by_part[b].push_back(e);
  }
  std::vector<EdgeId> tree;
  std::vector<char> seen(q.size(), 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    for (EdgeId e : by_part[p]) {
      const auto a = q.part_of(g.edge(e).u), b = q.part_of(g.edge(e).v);
      const std::size_t o = a == p ? b : a;
      if (seen[o]) continue;
      seen[o] = 1;
      tree.push_back(e);
      queue.push_back(o);
    }
  }
  if (tree.size() + 1 != q.size()) return std::nullopt;
  return tree;
}

struct RepairResult {
  FactorSubgraph factor;
  std::vector<EdgeId> tree;    // spanning tree of H2/Q2 used
  std::vector<EdgeId> forced;  // tree edges missing from H
  std::size_t circuits = 0;
  long long slack = 0;         // degree_drop_slack(H, factor, Q2)
};

/// Given f-factors H (connecting Q) and H2 (connecting the refinement Q2),
/// returns an f-factor H' connecting Q2 that keeps all but at most
/// 2(|Q2|-1) of each vertex's H-neighbors inside its Q2 part.
inline RepairResult repair_close_factor(const FactorSubgraph& h, const Partition& q, const FactorSubgraph& h2,
                                        const Partition& q2) {
  const Graph& g = h.host();
  if (&g != &h2.host()) throw ContractViolation("repair: factors of different hosts");
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (h.degree(v) != h2.degree(v)) throw ContractViolation("repair: degree sequences differ at " + std::to_string(v));
  if (!q2.refines(q)) throw ContractViolation("repair: Q2 does not refine Q");
  auto tree = quotient_bfs_tree(h2, q2);
  if (!tree) throw ContractViolation("repair: H2 does not connect Q2");

  RepairResult r{h, *tree, {}, 0, 0};
  for (EdgeId e : r.tree)
    if (!h.contains(e)) r.forced.push_back(e);
  const ColoredMultigraph diff = color_symmetric_difference(h, h2);
  const auto circuits = decompose_minimal_alternating(diff, r.forced);
  r.circuits = circuits.size();
  r.factor = apply_switch(h, circuits_union(diff, circuits));
  for (EdgeId e : r.tree) FF_ENSURE(r.factor.contains(e), "repaired factor lost a tree edge");
  FF_ENSURE(connects(r.factor, q2), "repaired factor does not connect Q2");
  r.slack = degree_drop_slack(h, r.factor, q2);
  FF_ENSURE(r.slack >= 0, "degree-drop bound violated");
  return r;
}

}  // namespace factorforge
