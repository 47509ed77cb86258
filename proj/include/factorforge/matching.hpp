#pragma once

// Maximum cardinality matching in general graphs (Edmonds' blossom
// algorithm, union-find blossom bases, one BFS per exposed root).
//
// The algorithm only needs neighbor enumeration, so it runs directly on
// implicit graphs such as the f-blowup without materializing the edge list.

#include <concepts>
#include <cstddef>
#include <deque>
#include <limits>
#include <utility>
#include <vector>

namespace factorforge {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

template <class G>
concept NeighborGraph = requires(const G& g, std::size_t v) {
  { g.vertex_count() } -> std::convertible_to<std::size_t>;
  g.for_each_neighbor(v, [](std::size_t) {});
};

/// Plain adjacency-list graph for arbitrary inputs.
class AdjacencyGraph {
 public:
  explicit AdjacencyGraph(std::size_t n = 0) : adj_(n) {}

  void add_edge(std::size_t a, std::size_t b) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
    ++edges_;
  }

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }

  template <class Fn>
  void for_each_neighbor(std::size_t v, Fn&& fn) const {
    for (std::size_t w : adj_[v]) fn(w);
  }

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t edges_ = 0;
};

struct Matching {
  std::vector<std::size_t> mate;  // kUnmatched for exposed vertices
  std::size_t size = 0;

  bool perfect() const { return 2 * size == mate.size(); }
  bool matched(std::size_t v) const { return mate[v] != kUnmatched; }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t v = 0; v < mate.size(); ++v)
      if (mate[v] != kUnmatched && v < mate[v]) out.emplace_back(v, mate[v]);
    return out;
  }
};

namespace detail {

template <NeighborGraph G>
class BlossomSearch {
 public:
  BlossomSearch(const G& g, std::vector<std::size_t> mate)
      : g_(g), n_(g.vertex_count()), mate_(std::move(mate)), base_(n_), pred_(n_, kNone),
        label_(n_, kFree), stamp_(n_, 0) {
    for (std::size_t v = 0; v < n_; ++v) base_[v] = v;
  }

  // Grows an alternating forest from root; augments and returns true when an
  // exposed vertex is reached.
  bool augment_from(std::size_t root) {
    reset();
    label_[root] = kEven;
    touched_.push_back(root);
    queue_.clear();
    queue_.push_back(root);
    while (!queue_.empty()) {
      const std::size_t x = queue_.front();
      queue_.pop_front();
      bool done = false;
      g_.for_each_neighbor(x, [&](std::size_t y) {
        if (done) return;
        if (label_[y] == kOdd || find(x) == find(y)) return;
        if (label_[y] == kFree) {
          label_[y] = kOdd;
          pred_[y] = x;
          touched_.push_back(y);
          if (mate_[y] == kUnmatched) {
            flip(y);
            done = true;
            return;
          }
          const std::size_t z = mate_[y];
          label_[z] = kEven;
          touched_.push_back(z);
          queue_.push_back(z);
        } else {
          const std::size_t l = lca(x, y);
          shrink(x, y, l);
          shrink(y, x, l);
        }
      });
      if (done) return true;
    }
    return false;
  }

  std::vector<std::size_t>& mate() { return mate_; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  static constexpr unsigned char kFree = 0, kEven = 1, kOdd = 2;

  std::size_t find(std::size_t x) {
    while (base_[x] != x) {
      base_[x] = base_[base_[x]];
      x = base_[x];
    }
    return x;
  }

  void reset() {
    for (std::size_t v : touched_) {
      base_[v] = v;
      pred_[v] = kNone;
      label_[v] = kFree;
    }
    touched_.clear();
  }

  void flip(std::size_t y) {
    while (y != kNone) {
      const std::size_t x = pred_[y];
      const std::size_t next = mate_[x];
      mate_[y] = x;
      mate_[x] = y;
      y = next;
    }
  }

  std::size_t lca(std::size_t x, std::size_t y) {
    ++clock_;
    x = find(x);
    y = find(y);
    for (;;) {
      if (x != kNone) {
        if (stamp_[x] == clock_) return x;
        stamp_[x] = clock_;
        x = mate_[x] == kUnmatched ? kNone : find(pred_[mate_[x]]);
      }
      std::swap(x, y);
    }
  }

  void shrink(std::size_t x, std::size_t y, std::size_t l) {
    while (find(x) != l) {
      pred_[x] = y;
      y = mate_[x];
      if (label_[y] == kOdd) {
        label_[y] = kEven;
        queue_.push_back(y);
      }
      if (find(x) == x) base_[x] = l;
      if (find(y) == y) base_[y] = l;
      x = pred_[y];
    }
  }

  const G& g_;
  std::size_t n_;
  std::vector<std::size_t> mate_;
  std::vector<std::size_t> base_;
  std::vector<std::size_t> pred_;
  std::vector<unsigned char> label_;
  std::vector<std::size_t> stamp_;
  std::size_t clock_ = 0;
  std::vector<std::size_t> touched_;
  std::deque<std::size_t> queue_;
};

}  // namespace detail

/// Maximum matching of g, optionally warm-started from a valid matching
/// (mate vector, kUnmatched for exposed vertices). Without a warm start a
/// greedy maximal matching seeds the search.
template <NeighborGraph G>
Matching max_matching(const G& g, std::vector<std::size_t> initial = {}) {
  const std::size_t n = g.vertex_count();
  if (initial.empty()) {
    initial.assign(n, kUnmatched);
    for (std::size_t v = 0; v < n; ++v) {
      if (initial[v] != kUnmatched) continue;
      bool placed = false;
      g.for_each_neighbor(v, [&](std::size_t w) {
        if (placed || w == v || initial[w] != kUnmatched) return;
        initial[v] = w;
        initial[w] = v;
        placed = true;
      });
    }
  }
  detail::BlossomSearch<G> search(g, std::move(initial));
  // A root with no augmenting path never gains one later, so one pass suffices.
  for (std::size_t v = 0; v < n; ++v)
    if (search.mate()[v] == kUnmatched) search.augment_from(v);

  Matching m;
  m.mate = std::move(search.mate());
  for (std::size_t v = 0; v < n; ++v)
    if (m.mate[v] != kUnmatched && v < m.mate[v]) ++m.size;
  return m;
}

}  // namespace factorforge
