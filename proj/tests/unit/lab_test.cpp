#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "factorforge/cli.hpp"
#include "support.hpp"

using namespace factorforge;

TEST(Oracle, Examples) {
  const Graph c4 = cycle_graph(4);
  const auto h = brute_force_cff(c4, DegreeSpec::uniform(4, 2));
  ASSERT_TRUE(h);
  EXPECT_EQ(h->size(), 4U);
  const Graph c3 = cycle_graph(3), pet = petersen_graph();
  EXPECT_FALSE(brute_force_cff(c3, DegreeSpec::uniform(3, 1)));
  EXPECT_FALSE(brute_force_cff(pet, DegreeSpec::uniform(10, 2)));

  const auto f = DegreeSpec::uniform(6, 2);
  const Graph tri = fft::two_triangles(), ttm = two_triangles_matching();
  EXPECT_FALSE(brute_force_pc(tri, f, fft::two_triangle_parts()));
  EXPECT_TRUE(brute_force_pc(tri, f, Partition::whole(6)));
  const auto hp = brute_force_pc(ttm, f, fft::two_triangle_parts());
  ASSERT_TRUE(hp);
  EXPECT_TRUE(connects(*hp, fft::two_triangle_parts()));
}

TEST(Oracle, SizeGuard) {
  const Graph k8 = complete_graph(8);
  EXPECT_THROW(brute_force_cff(k8, DegreeSpec::uniform(8, 2)), SizeGuardExceeded);
  EXPECT_THROW(has_hamiltonian_cycle(cycle_graph(21)), SizeGuardExceeded);
}

TEST(Oracle, MatchesNaiveEnumeration) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const Graph g = fft::random_graph(n, 0.5, rng);
    if (g.edge_count() > 14) continue;
    std::vector<int> f(n);
    for (Vertex v = 0; v < n; ++v) f[v] = static_cast<int>(rng() % (g.degree(v) + 1));
    const Partition q = random_partition(n, 1 + rng() % 3, rng);
    EXPECT_EQ(brute_force_cff(g, DegreeSpec(f)).has_value(), fft::naive_has_connected_f_factor(g, f));
    EXPECT_EQ(brute_force_pc(g, DegreeSpec(f), q).has_value(), fft::naive_has_connector(g, f, q));
  }
}

TEST(Hamiltonian, KnownGraphs) {
  for (std::size_t n = 3; n <= 9; ++n) EXPECT_TRUE(has_hamiltonian_cycle(cycle_graph(n)));
  EXPECT_TRUE(has_hamiltonian_cycle(complete_graph(5)));
  EXPECT_TRUE(has_hamiltonian_cycle(hypercube_graph(3)));
  EXPECT_FALSE(has_hamiltonian_cycle(petersen_graph()));
  EXPECT_FALSE(has_hamiltonian_cycle(Graph(4, {{0, 1}, {1, 2}, {2, 3}})));
}

TEST(Reduction, Shapes) {
  const auto c5 = gen_hamiltonian_reduction(cycle_graph(5), 4);
  EXPECT_EQ(c5.graph.vertex_count(), 20U);
  EXPECT_EQ(c5.demand[0], 5);
  EXPECT_EQ(c5.demand[5], 3);
  ASSERT_TRUE(c5.annotation);
  EXPECT_TRUE(c5.annotation->answer);
  EXPECT_TRUE(connected_f_factor(c5.graph, c5.demand).factor);

  const auto k4 = gen_hamiltonian_reduction(complete_graph(4), 2);
  EXPECT_EQ(k4.graph.vertex_count(), 8U);
  for (Vertex v = 4; v < 8; ++v) EXPECT_EQ(k4.demand[v], 1);
  EXPECT_TRUE(brute_force_cff(k4.graph, k4.demand));

  const auto pet = gen_hamiltonian_reduction(petersen_graph(), 2);
  EXPECT_EQ(pet.graph.vertex_count(), 20U);
  EXPECT_FALSE(pet.annotation->answer);
  EXPECT_FALSE(brute_force_cff(pet.graph, pet.demand));
}

TEST(Reduction, AnswerMatchesHamiltonicity) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    const Graph g = fft::random_graph(n, 0.5, rng);
    const auto inst = gen_hamiltonian_reduction(g, 2 + rng() % 2);
    SolverConfig cfg;
    cfg.backend = Backend::kDeterministic;
    const auto r = connected_f_factor(inst.graph, inst.demand, cfg);
    EXPECT_EQ(r.factor.has_value(), has_hamiltonian_cycle(g)) << "trial " << trial;
  }
}

TEST(Reduction, PaperParameter) {
  EXPECT_EQ(reduction_parameter_s(4, 1, 1), 1U);  // 2^2 / 4
  EXPECT_EQ(reduction_parameter_s(16, 1, 1), 1U);  // 2^4 / 16
  EXPECT_EQ(reduction_parameter_s(36, 1, 1), 2U);  // 2^6 / 36 rounded up
  EXPECT_EQ(reduction_parameter_s(1e6, 1, 0), std::uint64_t{1} << 63);
}

TEST(Planted, WitnessIsConnectedFactor) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto p = gen_planted({3 + seed % 10, 0.25, seed, 2});
    const Graph& g = p.instance.graph;
    const auto h = fft::subgraph_of(g, p.witness);
    EXPECT_TRUE(verify_f_factor(g, p.instance.demand, h).is_connected_factor());
  }
  const auto a = gen_planted({6, 0.3, 99, 2}), b = gen_planted({6, 0.3, 99, 2});
  EXPECT_EQ(emit_instance(a.instance), emit_instance(b.instance));
  const auto bare = gen_planted({9, 0.0, 5, 2});
  EXPECT_EQ(bare.instance.graph.edge_count(), bare.witness.size());
}

TEST(Planted, AnnotationsHoldUpUnderOracle) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const auto p = gen_planted({4 + seed % 5, 0.15, seed, 2});
    if (p.instance.graph.edge_count() > kBruteForceEdgeLimit) continue;
    ++checked;
    EXPECT_TRUE(brute_force_cff(p.instance.graph, p.instance.demand)) << "seed " << seed;
  }
  EXPECT_GT(checked, 400);
}

TEST(Clustered, WitnessAndCrossEdges) {
  const auto p = gen_clustered({60, 2, 0, 0.1, 3});
  const Graph& g = p.instance.graph;
  EXPECT_GE(p.instance.demand.min() * 3, 60);
  EXPECT_TRUE(verify_f_factor(g, p.instance.demand, fft::subgraph_of(g, p.witness)).is_connected_factor());
  const auto split = verify_f_factor(g, p.instance.demand, fft::subgraph_of(g, p.split));
  EXPECT_TRUE(split.degrees_match);
  EXPECT_FALSE(split.is_connected);
  std::size_t cross = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) cross += (g.edge(e).u < 30) != (g.edge(e).v < 30);
  EXPECT_EQ(cross, 2U);
}

TEST(RandomGen, ParityIsBalanced) {
  int odd = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed)
    odd += gen_random({7, 0.5, 0, 3, seed}).demand.odd_total();
  EXPECT_GT(odd, 120);
  EXPECT_LT(odd, 280);
}

TEST(Io, RoundTrip) {
  std::mt19937_64 rng(81);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Instance inst = gen_random({1 + seed % 9, 0.5, 0, 0, seed});
    if (seed % 2) inst.partition = random_partition(inst.graph.vertex_count(), 3, rng);
    if (seed % 3 == 0) inst.annotation = Annotation{seed % 2 == 0, "oracle run " + std::to_string(seed)};
    const std::string text = emit_instance(inst);
    const Instance back = parse_instance_string(text);
    EXPECT_TRUE(same_instance(inst, back));
    EXPECT_EQ(emit_instance(back), text);
  }
}

TEST(Io, ParseErrors) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_instance_string(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("v 0 1\n"), 1U);
  EXPECT_EQ(line_of("p cff 2 1\nv 0 1\nv 1 1\ne 0 2\n"), 4U);
  EXPECT_EQ(line_of("p cff 2 1\nv 0 1\nv 0 1\n"), 3U);
  EXPECT_EQ(line_of("p cff 2 1\nv 0 1\nx 1 1\n"), 3U);
  EXPECT_GT(line_of("p cff 2 1\nv 0 1\ne 0 1\n"), 0U);        // missing demand
  EXPECT_GT(line_of("p cff 2 2\nv 0 1\nv 1 1\ne 0 1\n"), 0U);  // edge count
  EXPECT_GT(line_of("p cff 2 2\nv 0 1\nv 1 1\ne 0 1\ne 1 0\n"), 0U);
  EXPECT_GT(line_of("p cff 3 0\nv 0 0\nv 1 0\nv 2 0\nq 0 0\n"), 0U);  // partial partition
  EXPECT_EQ(line_of("c hello\np cff 2 1\nv 0 1\nv 1 1\ne 0 1\n"), 0U);
}

TEST(Io, FactorFormat) {
  const Graph g = two_triangles_matching();
  const auto h = fft::subgraph_of(g, fft::kHexagon);
  EXPECT_EQ(parse_factor_string(emit_factor(h), g), h);
  EXPECT_THROW(parse_factor_string("f 0 4\n", g), ParseError);
  EXPECT_THROW(parse_factor_string("f 0 1\nf 1 0\n", g), ParseError);
}

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("ff_cli_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

int run(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli_main(args, o, e);
  if (out) *out = o.str();
  return code;
}

}  // namespace

TEST(Cli, SolveVerifyGenerate) {
  TempDir dir;
  const Instance ttm{two_triangles_matching(), DegreeSpec::uniform(6, 2), std::nullopt, std::nullopt};
  const auto file = dir.write("ttm.cff", emit_instance(ttm));
  std::string out;
  EXPECT_EQ(run({"solve", file, "--algorithm", "det"}, &out), 0);
  EXPECT_EQ(out.rfind("s yes\n", 0), 0U);
  const auto factor = dir.write("ttm.factor", out);
  EXPECT_EQ(run({"verify", file, factor}, &out), 0);
  EXPECT_NE(out.find("degrees-match=true"), std::string::npos);

  // Drop one edge from the factor.
  std::string tampered;
  {
    std::ifstream in(factor);
    std::string line, text;
    bool dropped = false;
    while (std::getline(in, line)) {
      if (!dropped && line.rfind("f ", 0) == 0) {
        dropped = true;
        continue;
      }
      text += line + "\n";
    }
    tampered = dir.write("bad.factor", text);
  }
  EXPECT_EQ(run({"verify", file, tampered}, &out), 2);
  EXPECT_NE(out.find("degrees-match=false"), std::string::npos);

  const Instance pet{petersen_graph(), DegreeSpec::uniform(10, 2), std::nullopt, std::nullopt};
  const auto pfile = dir.write("petersen.cff", emit_instance(pet));
  EXPECT_EQ(run({"solve", pfile, "--algorithm", "brute"}), 1);
  EXPECT_EQ(run({"solve", pfile, "--algorithm", "det"}), 1);
  EXPECT_EQ(run({"solve", pfile, "--algorithm", "rand", "--seed", "3"}), 3);

  const auto parts = dir.write("parts.q", "q 0 0\nq 0 1\nq 0 2\nq 1 3\nq 1 4\nq 1 5\n");
  EXPECT_EQ(run({"solve", file, "--partition", parts, "--algorithm", "rand"}), 0);
  const Instance tri{fft::two_triangles(), DegreeSpec::uniform(6, 2), std::nullopt, std::nullopt};
  const auto tfile = dir.write("tri.cff", emit_instance(tri));
  EXPECT_EQ(run({"solve", tfile, "--partition", parts, "--algorithm", "det"}), 1);

  const auto trace = (dir.path / "trace.json").string();
  EXPECT_EQ(run({"solve", file, "--trace", trace}), 0);
  std::ifstream tin(trace);
  const auto j = nlohmann::json::parse(tin);
  EXPECT_EQ(j["answer"], "yes");
  EXPECT_FALSE(j["rounds"].empty());

  EXPECT_EQ(run({"generate", "hamiltonian", "--family", "petersen", "--s", "2"}, &out), 0);
  const Instance gen = parse_instance_string(out);
  EXPECT_EQ(gen.graph.vertex_count(), 20U);
  EXPECT_EQ(run({"generate", "planted", "--n", "9", "--seed", "4", "-o", (dir.path / "p.cff").string()}), 0);
  EXPECT_EQ(run({"generate", "random", "--n", "7", "--seed", "4", "-o", (dir.path / "r.cff").string()}), 0);

  EXPECT_EQ(run({"bench", dir.path.string(), "--algorithms", "det,brute"}, &out), 0);
  EXPECT_EQ(out.rfind("instance,n,m,min_f,algorithm,answer,rounds,max_parts,wall_ms,seed\n", 0), 0U);
  EXPECT_NE(out.find("petersen.cff,10,15,2,det,no"), std::string::npos);
}

TEST(Cli, Errors) {
  TempDir dir;
  const auto bad = dir.write("bad.cff", "p cff 2 1\nv 0 1\n");
  EXPECT_EQ(run({"solve", bad}), 2);
  EXPECT_EQ(run({"solve", (dir.path / "missing.cff").string()}), 2);
  EXPECT_EQ(run({"solve"}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"solve", bad, "--algorithm", "fast"}), 2);
}

TEST(Samples, AnnotationsMatchSolver) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(FACTORFORGE_SAMPLES_DIR "/instances")) {
    if (entry.path().extension() != ".cff") continue;
    const Instance inst = read_instance_file(entry.path().string());
    ASSERT_TRUE(inst.annotation) << entry.path();
    const bool small = inst.graph.active_edge_count() <= kBruteForceEdgeLimit;
    const auto r = solve_instance(inst, small ? "brute" : "det", 1);
    EXPECT_EQ(r.factor.has_value(), inst.annotation->answer) << entry.path();
    ++seen;
  }
  EXPECT_GE(seen, 5U);
}
