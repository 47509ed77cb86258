#pragma once

// Core graph, demand, partition and subgraph types shared by every solver.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "factorforge/errors.hpp"
#include "factorforge/union_find.hpp"

namespace factorforge {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

struct Edge {
  Vertex u;
  Vertex v;  // u < v

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return x == u || x == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on vertices 0..n-1.
///
/// Edge ids are dense and follow the lexicographic order of (u, v); this is
/// the canonical edge order every enumeration in the library relies on.
/// Graphs are immutable. Deleting edges yields a new graph that keeps the
/// original ids and marks the removed edges inactive, so subgraphs and
/// factors of the derived graph remain comparable with the original.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> pairs) : n_(n) {
    edges_.reserve(pairs.size());
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw std::invalid_argument("edge endpoint out of range: " + std::to_string(a) + "-" +
                                    std::to_string(b));
      }
      if (a == b) throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
      edges_.push_back(a < b ? Edge{a, b} : Edge{b, a});
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i] == edges_[i - 1]) {
        throw std::invalid_argument("duplicate edge " + std::to_string(edges_[i].u) + "-" +
                                    std::to_string(edges_[i].v));
      }
    }
    active_.assign(edges_.size(), 1);
    rebuild_incidence();
  }

  std::size_t vertex_count() const { return n_; }
  /// Number of edge ids, including inactive ones.
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t active_edge_count() const { return active_count_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  bool active(EdgeId e) const { return active_[e] != 0; }

  /// Active incident edges of v, in increasing edge id.
  std::span<const EdgeId> incident(Vertex v) const {
    return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{a, b},
                               [](const Edge& x, const Edge& y) {
                                 return std::pair(x.u, x.v) < std::pair(y.u, y.v);
                               });
    if (it == edges_.end() || !(*it == Edge{a, b})) return std::nullopt;
    const auto id = static_cast<EdgeId>(it - edges_.begin());
    if (!active(id)) return std::nullopt;
    return id;
  }

  std::vector<EdgeId> active_edges() const {
    std::vector<EdgeId> out;
    out.reserve(active_count_);
    for (EdgeId e = 0; e < edges_.size(); ++e)
      if (active_[e]) out.push_back(e);
    return out;
  }

  /// Copy of this graph with the given edges masked out.
  Graph without_edges(std::span<const EdgeId> removed) const {
    Graph g = *this;
    for (EdgeId e : removed) g.active_.at(e) = 0;
    g.rebuild_incidence();
    return g;
  }

 private:
  void rebuild_incidence() {
    offsets_.assign(n_ + 1, 0);
    active_count_ = 0;
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      if (!active_[e]) continue;
      ++offsets_[edges_[e].u + 1];
      ++offsets_[edges_[e].v + 1];
      ++active_count_;
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    incidence_.assign(2 * active_count_, 0);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      if (!active_[e]) continue;
      incidence_[fill[edges_[e].u]++] = e;
      incidence_[fill[edges_[e].v]++] = e;
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<char> active_;
  std::size_t active_count_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<EdgeId> incidence_;
};

/// Demanded degree f(v) per vertex.
class DegreeSpec {
 public:
  DegreeSpec() = default;
  explicit DegreeSpec(std::vector<int> demand) : demand_(std::move(demand)) {
    const auto n = static_cast<long long>(demand_.size());
    for (std::size_t v = 0; v < demand_.size(); ++v) {
      if (demand_[v] < 0 || (n > 0 && demand_[v] > n - 1)) {
        throw std::invalid_argument("demand of vertex " + std::to_string(v) + " out of range");
      }
      total_ += demand_[v];
    }
  }

  static DegreeSpec uniform(std::size_t n, int value) {
    return DegreeSpec(std::vector<int>(n, value));
  }

  int operator[](Vertex v) const { return demand_[v]; }
  std::size_t size() const { return demand_.size(); }
  std::span<const int> values() const { return demand_; }
  long long total() const { return total_; }
  bool odd_total() const { return (total_ & 1) != 0; }
  int min() const { return demand_.empty() ? 0 : *std::min_element(demand_.begin(), demand_.end()); }

  friend bool operator==(const DegreeSpec& a, const DegreeSpec& b) { return a.demand_ == b.demand_; }

 private:
  std::vector<int> demand_;
  long long total_ = 0;
};

/// Ordered partition of 0..n-1. Parts are sorted by their minimum vertex, so
/// part 0 always contains vertex 0.
class Partition {
 public:
  Partition() = default;

  /// Builds from arbitrary integer labels, one per vertex.
  static Partition from_labels(std::span<const long long> labels) {
    std::vector<std::vector<Vertex>> parts;
    std::map<long long, std::size_t> index;
    for (std::size_t v = 0; v < labels.size(); ++v) {
      auto [it, fresh] = index.try_emplace(labels[v], parts.size());
      if (fresh) parts.emplace_back();
      parts[it->second].push_back(static_cast<Vertex>(v));
    }
    return Partition(labels.size(), std::move(parts));
  }

  static Partition whole(std::size_t n) {
    if (n == 0) return Partition(0, {});
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    return Partition(n, {std::move(all)});
  }

  static Partition singletons(std::size_t n) {
    std::vector<std::vector<Vertex>> parts(n);
    for (std::size_t v = 0; v < n; ++v) parts[v] = {static_cast<Vertex>(v)};
    return Partition(n, std::move(parts));
  }

  Partition(std::size_t n, std::vector<std::vector<Vertex>> parts) : part_of_(n, kUnassigned) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].empty()) throw InvalidPartition("part " + std::to_string(i) + " is empty");
      for (Vertex v : parts[i]) {
        if (v >= n) throw InvalidPartition("vertex " + std::to_string(v) + " out of range");
        if (part_of_[v] != kUnassigned) {
          throw InvalidPartition("vertex " + std::to_string(v) + " appears in two parts");
        }
        part_of_[v] = 0;
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (part_of_[v] == kUnassigned) {
        throw InvalidPartition("vertex " + std::to_string(v) + " is not covered");
      }
    }
    if (n > 0 && parts.empty()) throw InvalidPartition("no parts");
    for (auto& p : parts) std::sort(p.begin(), p.end());
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    parts_ = std::move(parts);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      for (Vertex v : parts_[i]) part_of_[v] = static_cast<std::uint32_t>(i);
  }

  std::size_t size() const { return parts_.size(); }
  std::size_t vertex_count() const { return part_of_.size(); }
  const std::vector<Vertex>& part(std::size_t i) const { return parts_[i]; }
  const std::vector<std::vector<Vertex>>& parts() const { return parts_; }
  std::size_t part_of(Vertex v) const { return part_of_[v]; }

  /// Partition with parts i and j merged (the merged part keeps the smaller
  /// minimum vertex, so merging into part 0 keeps it at index 0).
  Partition merged(std::size_t i, std::size_t j) const {
    auto parts = parts_;
    if (i > j) std::swap(i, j);
    parts[i].insert(parts[i].end(), parts[j].begin(), parts[j].end());
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j));
    return Partition(part_of_.size(), std::move(parts));
  }

  /// True when every part of *this lies inside a part of coarser.
  bool refines(const Partition& coarser) const {
    if (coarser.vertex_count() != vertex_count()) return false;
    for (const auto& p : parts_) {
      const auto target = coarser.part_of(p.front());
      for (Vertex v : p)
        if (coarser.part_of(v) != target) return false;
    }
    return true;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

 private:
  static constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::vector<Vertex>> parts_;
  std::vector<std::uint32_t> part_of_;
};

/// Edge subset of a host graph with cached degrees. Holds a non-owning
/// pointer to the host, which must outlive it.
class FactorSubgraph {
 public:
  FactorSubgraph() = default;
  explicit FactorSubgraph(const Graph& host)
      : host_(&host), member_(host.edge_count(), 0), degree_(host.vertex_count(), 0) {}

  FactorSubgraph(const Graph& host, std::span<const EdgeId> edges) : FactorSubgraph(host) {
    for (EdgeId e : edges) insert(e);
  }

  const Graph& host() const { return *host_; }
  bool contains(EdgeId e) const { return member_[e] != 0; }
  int degree(Vertex v) const { return degree_[v]; }
  std::size_t size() const { return size_; }

  void insert(EdgeId e) {
    if (e >= member_.size()) throw std::out_of_range("edge id " + std::to_string(e));
    if (member_[e]) return;
    member_[e] = 1;
    ++degree_[host_->edge(e).u];
    ++degree_[host_->edge(e).v];
    ++size_;
  }

  void erase(EdgeId e) {
    if (e >= member_.size() || !member_[e]) return;
    member_[e] = 0;
    --degree_[host_->edge(e).u];
    --degree_[host_->edge(e).v];
    --size_;
  }

  void toggle(EdgeId e) { contains(e) ? erase(e) : insert(e); }

  /// Member edge ids in canonical order.
  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out;
    out.reserve(size_);
    for (EdgeId e = 0; e < member_.size(); ++e)
      if (member_[e]) out.push_back(e);
    return out;
  }

  /// Member edges incident to v, in canonical order.
  std::vector<EdgeId> incident(Vertex v) const {
    std::vector<EdgeId> out;
    for (EdgeId e : host_->incident(v))
      if (member_[e]) out.push_back(e);
    return out;
  }

  friend bool operator==(const FactorSubgraph& a, const FactorSubgraph& b) {
    return a.member_ == b.member_;
  }

 private:
  const Graph* host_ = nullptr;
  std::vector<char> member_;
  std::vector<int> degree_;
  std::size_t size_ = 0;
};

struct QuotientEdge {
  std::size_t part_a;  // part_a < part_b
  std::size_t part_b;
  EdgeId origin;
};

/// G/Q: one multi-edge per host edge whose endpoints lie in different parts.
struct QuotientGraph {
  Partition parts;
  std::vector<QuotientEdge> edges;  // in canonical order of origin

  bool connected() const {
    UnionFind uf(parts.size());
    for (const auto& e : edges) uf.unite(e.part_a, e.part_b);
    return uf.set_count() <= 1;
  }
};

/// Connected components of H as a partition of the host vertices.
inline Partition components(const FactorSubgraph& h) {
  const Graph& g = h.host();
  UnionFind uf(g.vertex_count());
  for (EdgeId e : h.edges()) uf.unite(g.edge(e).u, g.edge(e).v);
  std::vector<long long> labels(g.vertex_count());
  for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = static_cast<long long>(uf.find(v));
  return Partition::from_labels(labels);
}

inline QuotientGraph quotient(const Graph& g, const Partition& q) {
  if (q.vertex_count() != g.vertex_count()) {
    throw InvalidPartition("partition covers " + std::to_string(q.vertex_count()) +
                           " vertices, graph has " + std::to_string(g.vertex_count()));
  }
  QuotientGraph out{q, {}};
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!g.active(e)) continue;
    auto a = q.part_of(g.edge(e).u);
    auto b = q.part_of(g.edge(e).v);
    if (a == b) continue;
    out.edges.push_back({std::min(a, b), std::max(a, b), e});
  }
  return out;
}

/// True when H/Q is connected.
inline bool connects(const FactorSubgraph& h, const Partition& q) {
  const Graph& g = h.host();
  UnionFind uf(q.size());
  for (EdgeId e : h.edges()) uf.unite(q.part_of(g.edge(e).u), q.part_of(g.edge(e).v));
  return uf.set_count() <= 1;
}

struct Refinement {
  Partition partition;
  bool unchanged;
};

/// Splits every part Q of q into the vertex sets of the components of H[Q].
inline Refinement refine_by_components(const FactorSubgraph& h, const Partition& q) {
  const Graph& g = h.host();
  UnionFind uf(g.vertex_count());
  for (EdgeId e : h.edges()) {
    const auto& ed = g.edge(e);
    if (q.part_of(ed.u) == q.part_of(ed.v)) uf.unite(ed.u, ed.v);
  }
  std::vector<long long> labels(g.vertex_count());
  for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = static_cast<long long>(uf.find(v));
  Partition refined = Partition::from_labels(labels);
  const bool same = refined.size() == q.size();
  return {std::move(refined), same};
}

struct FactorReport {
  bool degrees_match = false;
  bool is_connected = false;
  std::optional<bool> connects_partition;
  std::vector<Vertex> degree_mismatches;

  bool is_connected_factor() const { return degrees_match && is_connected; }
};

inline FactorReport verify_f_factor(const Graph& g, const DegreeSpec& f, const FactorSubgraph& h,
                                    const std::optional<Partition>& q = std::nullopt) {
  FactorReport r;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    // Count from the edge set rather than trusting the cache.
    int d = 0;
    for (EdgeId e : g.incident(v)) d += h.contains(e) ? 1 : 0;
    if (d != h.degree(v) || v >= f.size() || d != f[v]) r.degree_mismatches.push_back(v);
  }
  for (EdgeId e : h.edges()) {
    if (!g.active(e)) {
      r.degree_mismatches.push_back(g.edge(e).u);
      break;
    }
  }
  r.degrees_match = r.degree_mismatches.empty() && f.size() == g.vertex_count();
  r.is_connected = g.vertex_count() == 0 || components(h).size() == 1;
  if (q) r.connects_partition = connects(h, *q);
  return r;
}

}  // namespace factorforge
