#pragma once

// Tutte matrices of f-blowups evaluated at a random point, and the
// partition polynomial P_Q: a sum over vertex sets Q(I) (unions of parts
// containing part 0) of det T(B[Q(I)]) * det T(B[rest]) * m_I, where m_I
// squares the pair variables of every host edge crossing the cut.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "factorforge/blowup.hpp"
#include "factorforge/errors.hpp"
#include "factorforge/graph.hpp"

namespace factorforge {

/// One field value per blowup edge. Values are keyed by host edge, side and
/// core copy, so the same assignment serves every induced blowup of B_f(G).
/// Per host edge e = (u, v): slot 0 is the pair edge (u_e, v_e), then f(u)
/// slots for A(u)-u_e, then f(v) slots for v_e-A(v).
template <class F>
class TutteAssignment {
 public:
  using Element = typename F::Element;

  template <class Rng>
  TutteAssignment(const Graph& g, std::span<const int> demand, const F& field, Rng& rng)
      : demand_(demand.begin(), demand.end()), offset_(g.edge_count() + 1, 0) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto& ed = g.edge(e);
      offset_[e + 1] = offset_[e] + 1 + static_cast<std::size_t>(demand_[ed.u] + demand_[ed.v]);
    }
    values_.reserve(offset_.back());
    for (std::size_t i = 0; i < offset_.back(); ++i) values_.push_back(field.random(rng));
  }

  std::span<const int> demand() const { return demand_; }
  std::size_t size() const { return values_.size(); }

  const Element& pair(EdgeId e) const { return values_[offset_[e]]; }
  const Element& low_side(EdgeId e, int copy) const { return values_[offset_[e] + 1 + copy]; }
  const Element& high_side(EdgeId e, int copy, int low_demand) const {
    return values_[offset_[e] + 1 + static_cast<std::size_t>(low_demand + copy)];
  }

  // Test hook: overwrite a single slot.
  Element& slot(std::size_t i) { return values_[i]; }

 private:
  std::vector<int> demand_;
  std::vector<std::size_t> offset_;
  std::vector<Element> values_;
};

/// Dense symmetric Tutte matrix of b at assignment a (row-major).
template <class F>
std::vector<typename F::Element> tutte_matrix(const BlowupGraph& b, const TutteAssignment<F>& a, const F& field) {
  const Graph& g = b.host();
  const auto demand = b.demand();
  FF_ENSURE(std::equal(demand.begin(), demand.end(), a.demand().begin(), a.demand().end()),
            "assignment was drawn for different demands");
  const std::size_t n = b.vertex_count();
  std::vector<typename F::Element> m(n * n, field.zero());
  auto put = [&](std::size_t x, std::size_t y, const typename F::Element& v) {
    m[x * n + y] = v;
    m[y * n + x] = v;
  };
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!b.includes_edge(e)) continue;
    const auto& ed = g.edge(e);
    const std::size_t lo = b.gadget(e);
    put(lo, lo + 1, a.pair(e));
    for (int i = 0; i < demand[ed.u]; ++i) put(b.core(ed.u) + static_cast<std::size_t>(i), lo, a.low_side(e, i));
    for (int i = 0; i < demand[ed.v]; ++i)
      put(lo + 1, b.core(ed.v) + static_cast<std::size_t>(i), a.high_side(e, i, demand[ed.u]));
  }
  return m;
}

/// Determinant of an n x n matrix over F by Gaussian elimination. In
/// characteristic 2 row swaps do not change the sign.
template <class F>
typename F::Element determinant(std::vector<typename F::Element> m, std::size_t n, const F& field) {
  auto det = field.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && field.is_zero(m[p * n + c])) ++p;
    if (p == n) return field.zero();
    if (p != c)
      for (std::size_t j = c; j < n; ++j) std::swap(m[p * n + j], m[c * n + j]);
    const auto pivot = m[c * n + c];
    det = field.mul(det, pivot);
    const auto pinv = field.inv(pivot);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (field.is_zero(m[r * n + c])) continue;
      const auto factor = field.mul(m[r * n + c], pinv);
      for (std::size_t j = c; j < n; ++j) m[r * n + j] = field.add(m[r * n + j], field.mul(factor, m[c * n + j]));
    }
  }
  return det;
}

/// det T(b) at a. Odd order gives 0 without elimination; the empty graph
/// has determinant 1.
template <class F>
typename F::Element tutte_det(const BlowupGraph& b, const TutteAssignment<F>& a, const F& field) {
  const std::size_t n = b.vertex_count();
  if (n == 0) return field.one();
  if (n % 2 == 1) return field.zero();
  return determinant(tutte_matrix(b, a, field), n, field);
}

/// m_I: product of squared pair variables over host edges with one endpoint
/// in Q(I) and the other outside. `in_i` marks the parts in I (part 0 must
/// be marked); the empty product is 1.
template <class F>
typename F::Element monomial_value(std::span<const char> in_i, const Partition& q, const Graph& g,
                                   const TutteAssignment<F>& a, const F& field) {
  if (in_i.size() != q.size() || q.size() == 0 || !in_i[0])
    throw std::invalid_argument("index set must mark part 0 and match the partition size");
  auto out = field.one();
  for (EdgeId e : g.active_edges()) {
    const bool a_in = in_i[q.part_of(g.edge(e).u)] != 0, b_in = in_i[q.part_of(g.edge(e).v)] != 0;
    if (a_in == b_in) continue;
    out = field.mul(out, field.mul(a.pair(e), a.pair(e)));
  }
  return out;
}

struct PqStats {
  std::size_t terms = 0;
  std::size_t determinants = 0;
};

inline constexpr std::size_t kMaxPolynomialParts = 30;

/// P_Q(G, f) at the point a; 2^(|Q|-1) terms.
template <class F>
typename F::Element eval_PQ(const Graph& g, std::span<const int> demand, const Partition& q,
                            const TutteAssignment<F>& a, const F& field, PqStats* stats = nullptr) {
  if (q.vertex_count() != g.vertex_count()) throw InvalidPartition("partition does not cover the graph");
  const std::size_t l = q.size();
  if (l == 0) return field.one();
  if (l > kMaxPolynomialParts) throw SizeGuardExceeded("partition has too many parts for 2^(l-1) terms");
  const BlowupGraph full = build_blowup(g, demand);
  auto sum = field.zero();
  std::vector<char> in_i(l, 0), side(g.vertex_count(), 0), other(g.vertex_count(), 0);
  in_i[0] = 1;
  const std::uint64_t count = std::uint64_t{1} << (l - 1);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t p = 1; p < l; ++p) in_i[p] = (mask >> (p - 1)) & 1U;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      side[v] = in_i[q.part_of(v)];
      other[v] = side[v] ? 0 : 1;
    }
    if (stats) {
      ++stats->terms;
      stats->determinants += 2;
    }
    const auto d1 = tutte_det(induced_blowup(full, std::span<const char>(side)), a, field);
    if (field.is_zero(d1)) continue;
    const auto d2 = tutte_det(induced_blowup(full, std::span<const char>(other)), a, field);
    if (field.is_zero(d2)) continue;
    sum = field.add(sum, field.mul(field.mul(d1, d2), monomial_value(std::span<const char>(in_i), q, g, a, field)));
  }
  return sum;
}

}  // namespace factorforge
