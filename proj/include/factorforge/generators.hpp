#pragma once

// Instance generators: planted yes-instances, random instances, the
// Hamiltonian-cycle reduction, and a few named graphs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "factorforge/graph.hpp"
#include "factorforge/oracle.hpp"

namespace factorforge {

struct Annotation {
  bool answer = false;
  std::string provenance;  // who vouches for the answer

  bool operator==(const Annotation&) const = default;
};

struct Instance {
  Graph graph;
  DegreeSpec demand;
  std::optional<Partition> partition;
  std::optional<Annotation> annotation;
};

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

// ---- named graphs --------------------------------------------------------

inline Graph cycle_graph(std::size_t n) {
  EdgeList e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return Graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  EdgeList e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph(n, e);
}

inline Graph hypercube_graph(unsigned dim) {
  const std::size_t n = std::size_t{1} << dim;
  EdgeList e;
  for (Vertex a = 0; a < n; ++a)
    for (unsigned b = 0; b < dim; ++b)
      if (!((a >> b) & 1U)) e.emplace_back(a, a | (1U << b));
  return Graph(n, e);
}

inline Graph petersen_graph() {
  EdgeList e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return Graph(10, e);
}

/// Triangles {0,1,2} and {3,4,5} joined by the matching 0-3, 1-4, 2-5.
inline Graph two_triangles_matching() {
  return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

// ---- Hamiltonian cycle reduction ------------------------------------------

/// Attaches to every vertex v a clique C_v of s-1 new vertices, all adjacent
/// to v, with demand s-1 on clique vertices and s+1 on original ones. Clique
/// vertices have degree exactly s-1, so every f-factor keeps all clique
/// edges and picks a 2-factor of G; it is connected iff that 2-factor is a
/// Hamiltonian cycle. Original vertices keep ids 0..z-1; clique vertex i of
/// C_v is z + v(s-1) + i.
inline Instance gen_hamiltonian_reduction(const Graph& g, std::size_t s) {
  if (s < 2) throw std::invalid_argument("reduction needs s >= 2");
  const std::size_t z = g.vertex_count();
  const std::size_t n = z + z * (s - 1);
  EdgeList e;
  for (EdgeId id : g.active_edges()) e.emplace_back(g.edge(id).u, g.edge(id).v);
  std::vector<int> f(n, static_cast<int>(s - 1));
  for (Vertex v = 0; v < z; ++v) {
    f[v] = static_cast<int>(s + 1);
    const Vertex base = static_cast<Vertex>(z + v * (s - 1));
    for (Vertex i = 0; i < s - 1; ++i) {
      e.emplace_back(v, base + i);
      for (Vertex j = i + 1; j < s - 1; ++j) e.emplace_back(base + i, base + j);
    }
  }
  Instance inst{Graph(n, e), DegreeSpec(std::move(f)), std::nullopt, std::nullopt};
  if (z <= kHamiltonVertexLimit) inst.annotation = Annotation{has_hamiltonian_cycle(g), "hamiltonian-cycle dp on source"};
  return inst;
}

/// ceil(2^((z / c1)^(1 / (1 + eps))) / z), saturating at 2^63.
inline std::uint64_t reduction_parameter_s(double z, double c1, double eps) {
  if (z <= 0 || c1 <= 0 || eps < 0) throw std::invalid_argument("reduction parameters must be positive");
  const double exponent = std::pow(z / c1, 1.0 / (1.0 + eps));
  if (exponent >= 63.0 + std::log2(z)) return std::uint64_t{1} << 63;
  return static_cast<std::uint64_t>(std::ceil(std::exp2(exponent) / z));
}

// ---- planted instances -----------------------------------------------------

struct PlantedOptions {
  std::size_t n = 8;
  double extra_edge_rate = 0.2;
  std::uint64_t seed = 1;
  int min_degree = 2;
};

struct PlantedInstance {
  Instance instance;
  EdgeList witness;  // the planted connected f-factor
  EdgeList split;    // clustered only: a disconnected f-factor, one component per cluster
};

/// Random connected H (random tree, then edges until every degree reaches
/// min_degree), f := d_H, plus noise edges kept with probability
/// extra_edge_rate.
inline PlantedInstance gen_planted(const PlantedOptions& opt) {
  const std::size_t n = opt.n;
  if (n < 3) throw std::invalid_argument("planted instances need n >= 3");
  std::mt19937_64 rng(opt.seed);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);

  std::set<std::pair<Vertex, Vertex>> h;
  std::vector<int> deg(n, 0);
  auto add = [&](Vertex a, Vertex b) {
    if (a == b || !h.insert({std::min(a, b), std::max(a, b)}).second) return false;
    ++deg[a];
    ++deg[b];
    return true;
  };
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    add(order[i], order[pick(rng)]);
  }
  const int want = std::min<int>(opt.min_degree, static_cast<int>(n) - 1);
  std::uniform_int_distribution<Vertex> any(0, static_cast<Vertex>(n - 1));
  for (Vertex v = 0; v < n; ++v) {
    while (deg[v] < want) {
      // Prefer partners that are themselves short of the target.
      Vertex best = v;
      for (int tries = 0; tries < 4 * static_cast<int>(n); ++tries) {
        const Vertex w = any(rng);
        if (w == v || h.count({std::min(v, w), std::max(v, w)})) continue;
        best = w;
        if (deg[w] < want) break;
      }
      if (best == v || !add(v, best)) break;
    }
  }

  EdgeList all(h.begin(), h.end());
  std::bernoulli_distribution noise(std::clamp(opt.extra_edge_rate, 0.0, 1.0));
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (!h.count({a, b}) && opt.extra_edge_rate > 0 && noise(rng)) all.emplace_back(a, b);

  PlantedInstance out{{Graph(n, all), DegreeSpec(deg), std::nullopt,
                       Annotation{true, "planted witness, seed " + std::to_string(opt.seed)}},
                      EdgeList(h.begin(), h.end()),
                      {}};
  return out;
}

struct ClusteredOptions {
  std::size_t n = 500;
  std::size_t clusters = 2;
  int degree = 0;  // even; 0 picks the smallest even value >= n/3
  double noise_rate = 0.05;
  std::uint64_t seed = 1;
};

/// Dense yes-instance whose natural f-factors fall apart into clusters: each
/// cluster carries a circulant d-regular graph (together: `split`), and
/// consecutive clusters are joined in the witness by one 2-edge swap between
/// their highest-numbered vertices. Noise edges stay inside clusters, so only
/// the swap edges cross.
inline PlantedInstance gen_clustered(const ClusteredOptions& opt) {
  const std::size_t n = opt.n, k = std::max<std::size_t>(1, opt.clusters);
  int d = opt.degree ? opt.degree : static_cast<int>((n + 2) / 3);
  if (d % 2) ++d;
  const std::size_t size = n / k;
  if (size < static_cast<std::size_t>(d) + 3) throw std::invalid_argument("clusters too small for the degree");
  std::mt19937_64 rng(opt.seed);
  std::set<std::pair<Vertex, Vertex>> h;
  auto key = [](Vertex a, Vertex b) { return std::pair{std::min(a, b), std::max(a, b)}; };
  std::vector<std::pair<Vertex, Vertex>> bounds;  // [first, last] of each cluster
  for (std::size_t c = 0; c < k; ++c) {
    const Vertex first = static_cast<Vertex>(c * size);
    const Vertex last = static_cast<Vertex>(c + 1 == k ? n - 1 : (c + 1) * size - 1);
    bounds.emplace_back(first, last);
    const std::size_t len = last - first + 1;
    for (std::size_t i = 0; i < len; ++i)
      for (int j = 1; j <= d / 2; ++j)
        h.insert(key(static_cast<Vertex>(first + i), static_cast<Vertex>(first + (i + j) % len)));
  }
  const std::set<std::pair<Vertex, Vertex>> split = h;
  // Swap (a, a-1) in cluster c and (b, b-1) in cluster c+1 for (a, b), (a-1, b-1).
  for (std::size_t c = 0; c + 1 < k; ++c) {
    const Vertex a = bounds[c].second - 1, b = bounds[c + 1].second;
    h.erase(key(a, a - 1));
    h.erase(key(b, b - 1));
    h.insert(key(a, b));
    h.insert(key(a - 1, b - 1));
  }
  std::vector<int> deg(n, 0);
  for (auto [a, b] : h) {
    ++deg[a];
    ++deg[b];
  }
  std::set<std::pair<Vertex, Vertex>> kept = h;
  kept.insert(split.begin(), split.end());
  EdgeList all(kept.begin(), kept.end());
  std::bernoulli_distribution noise(std::clamp(opt.noise_rate, 0.0, 1.0));
  for (auto [first, last] : bounds)
    for (Vertex a = first; a <= last; ++a)
      for (Vertex b = a + 1; b <= last; ++b)
        if (!kept.count({a, b}) && opt.noise_rate > 0 && noise(rng)) all.emplace_back(a, b);
  return {{Graph(n, all), DegreeSpec(deg), std::nullopt,
           Annotation{true, "clustered witness, seed " + std::to_string(opt.seed)}},
          EdgeList(h.begin(), h.end()),
          EdgeList(split.begin(), split.end())};
}

// ---- random instances ------------------------------------------------------

struct RandomOptions {
  std::size_t n = 8;
  double edge_prob = 0.4;
  std::size_t max_edges = 0;  // 0: unlimited
  int max_demand = 0;         // 0: up to the degree
  std::uint64_t seed = 1;
};

/// G(n, p) with demands drawn uniformly from [1, min(deg, max_demand)] (0 on
/// isolated vertices). The parity of the total is then set by a fair coin,
/// when some demand can move by one.
inline Instance gen_random(const RandomOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::bernoulli_distribution coin(std::clamp(opt.edge_prob, 0.0, 1.0));
  EdgeList e;
  for (Vertex a = 0; a < opt.n; ++a)
    for (Vertex b = a + 1; b < opt.n; ++b)
      if (coin(rng)) e.emplace_back(a, b);
  if (opt.max_edges && e.size() > opt.max_edges) {
    std::shuffle(e.begin(), e.end(), rng);
    e.resize(opt.max_edges);
  }
  Graph g(opt.n, e);
  std::vector<int> f(opt.n, 0);
  for (Vertex v = 0; v < opt.n; ++v) {
    const int cap = opt.max_demand ? std::min<int>(opt.max_demand, static_cast<int>(g.degree(v)))
                                   : static_cast<int>(g.degree(v));
    if (cap > 0) f[v] = std::uniform_int_distribution<int>(1, cap)(rng);
  }
  long long total = std::accumulate(f.begin(), f.end(), 0LL);
  const bool want_odd = std::bernoulli_distribution(0.5)(rng);
  if ((total & 1) != (want_odd ? 1 : 0)) {
    for (Vertex v = 0; v < opt.n; ++v) {
      const int cap = opt.max_demand ? std::min<int>(opt.max_demand, static_cast<int>(g.degree(v)))
                                     : static_cast<int>(g.degree(v));
      if (f[v] < cap) {
        ++f[v];
        break;
      }
      if (f[v] > 1) {
        --f[v];
        break;
      }
    }
  }
  return {std::move(g), DegreeSpec(std::move(f)), std::nullopt, std::nullopt};
}

/// Random partition of n vertices into at most `parts` nonempty parts.
inline Partition random_partition(std::size_t n, std::size_t parts, std::mt19937_64& rng) {
  parts = std::max<std::size_t>(1, std::min(parts, n));
  std::vector<long long> label(n);
  std::uniform_int_distribution<long long> pick(0, static_cast<long long>(parts) - 1);
  for (auto& l : label) l = pick(rng);
  return Partition::from_labels(label);
}

}  // namespace factorforge
