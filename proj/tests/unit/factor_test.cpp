#include <gtest/gtest.h>

#include "support.hpp"

using namespace factorforge;

TEST(Matching, SmallExamples) {
  AdjacencyGraph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  const Matching mp = max_matching(path);
  EXPECT_EQ(mp.size, 1U);
  EXPECT_FALSE(mp.perfect());

  AdjacencyGraph c4(4);
  for (std::size_t i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4);
  const Matching mc = max_matching(c4);
  EXPECT_EQ(mc.size, 2U);
  EXPECT_TRUE(mc.perfect());
}

TEST(Matching, BlossomNeeded) {
  // Triangle 0-1-2 with pendant paths; the greedy start matches 0-1 and
  // only an augmenting path through the odd cycle fixes it.
  AdjacencyGraph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(2, 3);
  g.add_edge(0, 4);
  g.add_edge(3, 5);
  const Matching m = max_matching(g);
  EXPECT_EQ(m.size, 3U);
  EXPECT_TRUE(fft::is_valid_matching(g, m));
}

TEST(Matching, AgreesWithSubsetDp) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 14;
    const double p = 0.1 + 0.1 * static_cast<double>(rng() % 7);
    AdjacencyGraph g(n);
    std::bernoulli_distribution coin(p);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (coin(rng)) g.add_edge(a, b);
    const Matching m = max_matching(g);
    ASSERT_TRUE(fft::is_valid_matching(g, m));
    EXPECT_EQ(m.size, fft::naive_matching_size(g)) << "trial " << trial;
  }
}

TEST(Blowup, SingleEdge) {
  const Graph g(2, {{0, 1}});
  const int f[] = {1, 1};
  const BlowupGraph b = build_blowup(g, f);
  ASSERT_EQ(b.vertex_count(), 4U);
  const auto edges = b.edges();
  ASSERT_EQ(edges.size(), 3U);
  // a_u = 0, a_v = 1, u_e = 2, v_e = 3
  EXPECT_EQ(edges[0].a, 0U);
  EXPECT_EQ(edges[0].b, 2U);
  EXPECT_EQ(edges[1].a, 2U);
  EXPECT_EQ(edges[1].b, 3U);
  EXPECT_EQ(edges[2].a, 3U);
  EXPECT_EQ(edges[2].b, 1U);
  const Matching m = max_matching(b.materialize());
  EXPECT_TRUE(m.perfect());
  EXPECT_EQ(m.mate[0], 2U);
  EXPECT_EQ(m.mate[1], 3U);
}

TEST(Blowup, Counts) {
  const Graph tri = cycle_graph(3);
  const BlowupGraph bt = build_blowup(tri, DegreeSpec::uniform(3, 2));
  EXPECT_EQ(bt.vertex_count(), 12U);
  EXPECT_EQ(bt.edges().size(), 15U);
  const Graph k4 = complete_graph(4);
  const BlowupGraph bk = build_blowup(k4, DegreeSpec::uniform(4, 2));
  EXPECT_EQ(bk.vertex_count(), 20U);
}

TEST(Blowup, GadgetStructure) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = fft::random_graph(7, 0.5, rng);
    std::vector<int> f(7);
    for (Vertex v = 0; v < 7; ++v) f[v] = g.degree(v) ? static_cast<int>(rng() % (g.degree(v) + 1)) : 0;
    const BlowupGraph b = build_blowup(g, f);
    long long total = 0;
    for (int x : f) total += x;
    EXPECT_EQ(b.vertex_count(), static_cast<std::size_t>(total) + 2 * g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const std::size_t lo = b.gadget(e);
      std::vector<std::size_t> nb;
      b.for_each_neighbor(lo, [&](std::size_t w) { nb.push_back(w); });
      ASSERT_EQ(nb.size(), static_cast<std::size_t>(f[g.edge(e).u]) + 1);
      EXPECT_EQ(nb.back(), lo + 1);
      for (std::size_t i = 0; i + 1 < nb.size(); ++i) {
        EXPECT_EQ(b.describe(nb[i]).role, BlowupRole::kCore);
        EXPECT_EQ(b.describe(nb[i]).index, g.edge(e).u);
      }
    }
  }
}

TEST(Blowup, RejectsDemandAboveDegree) {
  const Graph g(3, {{0, 1}});
  const int f[] = {1, 2, 0};
  EXPECT_THROW(build_blowup(g, f), InfeasibleDemand);
}

TEST(Blowup, InducedIsBlowupOfInducedGraph) {
  const Graph g = two_triangles_matching();
  const auto f = DegreeSpec::uniform(6, 2);
  const BlowupGraph b = build_blowup(g, f);
  const Vertex s[] = {0, 1, 2};
  const BlowupGraph bi = induced_blowup(b, std::span<const Vertex>(s));
  const Graph c3 = cycle_graph(3);
  const BlowupGraph tri = build_blowup(c3, DegreeSpec::uniform(3, 2));
  EXPECT_EQ(bi.vertex_count(), tri.vertex_count());
  EXPECT_EQ(bi.edges().size(), tri.edges().size());
  EXPECT_EQ(bi.gadget_pair_count(), 3U);

  const std::vector<char> all(6, 1), none(6, 0);
  EXPECT_EQ(induced_blowup(b, std::span<const char>(all)).vertex_count(), b.vertex_count());
  EXPECT_EQ(induced_blowup(b, std::span<const char>(none)).vertex_count(), 0U);
}

TEST(FFactor, Examples) {
  const Graph k4 = complete_graph(4);
  const auto h = find_f_factor(k4, DegreeSpec::uniform(4, 2));
  ASSERT_TRUE(h);
  EXPECT_TRUE(verify_f_factor(k4, DegreeSpec::uniform(4, 2), *h).is_connected_factor());

  const Graph c3 = cycle_graph(3);
  EXPECT_FALSE(find_f_factor(c3, DegreeSpec::uniform(3, 1)));

  const Graph t = fft::two_triangles();
  const auto ht = find_f_factor(t, DegreeSpec::uniform(6, 2));
  ASSERT_TRUE(ht);
  EXPECT_EQ(ht->size(), 6U);
}

TEST(FFactor, ForcedEdges) {
  const Graph g = two_triangles_matching();
  const auto f = DegreeSpec::uniform(6, 2);
  const EdgeId one[] = {*g.find_edge(1, 4)};
  const auto h = find_f_factor_containing(g, f, one);
  ASSERT_TRUE(h);
  EXPECT_TRUE(h->contains(one[0]));
  EXPECT_TRUE(verify_f_factor(g, f, *h).degrees_match);

  const EdgeId all3[] = {*g.find_edge(0, 3), *g.find_edge(1, 4), *g.find_edge(2, 5)};
  EXPECT_FALSE(find_f_factor_containing(g, f, all3));

  const auto h0 = find_f_factor_containing(g, f, std::span<const EdgeId>());
  EXPECT_TRUE(h0);
}

TEST(FFactor, AgreesWithEnumeration) {
  std::mt19937_64 rng(23);
  int yes = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const Graph g = fft::random_graph(n, 0.55, rng);
    if (g.edge_count() > 16) continue;
    std::vector<int> f(n);
    for (Vertex v = 0; v < n; ++v) f[v] = static_cast<int>(rng() % (g.degree(v) + 2));
    const bool expected = fft::naive_has_f_factor(g, f);
    const auto h = find_f_factor(g, f);
    ASSERT_EQ(h.has_value(), expected) << "trial " << trial;
    if (h) {
      ++yes;
      for (Vertex v = 0; v < n; ++v) EXPECT_EQ(h->degree(v), f[v]);
    }

    // Forced version against enumeration restricted to supersets.
    if (g.edge_count() == 0) continue;
    const EdgeId forced[] = {static_cast<EdgeId>(rng() % g.edge_count())};
    const bool exp_forced = fft::exists_subset(g, f, [&](const FactorSubgraph& s) { return s.contains(forced[0]); });
    const auto hf = find_f_factor_containing(g, f, forced);
    ASSERT_EQ(hf.has_value(), exp_forced) << "trial " << trial;
    if (hf) {
      EXPECT_TRUE(hf->contains(forced[0]));
    }
  }
  EXPECT_GT(yes, 25);
}
