#pragma once

// Command-line front end: solve, verify, generate, bench.
// Exit codes: 0 yes, 1 no, 2 error or failed verification, 3 no from the
// randomized backend (possibly a false negative).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "factorforge/generators.hpp"
#include "factorforge/io.hpp"
#include "factorforge/oracle.hpp"
#include "factorforge/partition_connector.hpp"
#include "factorforge/randomized_pc.hpp"
#include "factorforge/solver.hpp"

namespace factorforge {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitRandomizedNo = 3;

struct SolveOutcome {
  std::optional<FactorSubgraph> factor;
  bool randomized = false;
  std::size_t rounds = 0;
  std::size_t max_parts = 0;
  std::optional<SequenceTrace> trace;
};

namespace detail {

inline std::uint64_t default_seed() {
  if (const char* s = std::getenv("FACTORFORGE_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

inline const char* backend_name(Backend b) {
  switch (b) {
    case Backend::kDeterministic: return "det";
    case Backend::kRandomized: return "rand";
    case Backend::kAuto: return "auto";
  }
  return "?";
}

inline nlohmann::json trace_json(const SequenceTrace& t) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : t.rounds) {
    nlohmann::json j{{"round", r.round},
                     {"parts", r.parts},
                     {"part_sizes", r.part_sizes},
                     {"backend_calls", r.backend_calls},
                     {"repair_circuits", r.repair_circuits},
                     {"forced_edges", r.forced_edges},
                     {"terminal", r.terminal}};
    j["degree_drop_slack"] = r.degree_drop_slack ? nlohmann::json(*r.degree_drop_slack) : nlohmann::json(nullptr);
    rounds.push_back(std::move(j));
  }
  return {{"backend", backend_name(t.backend_used)}, {"rounds", rounds}};
}

inline Partition read_partition_file(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<long long> lab(n, -1);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto w = split_words(raw);
    if (w.empty() || w[0] == "c") continue;
    if (w[0] != "q" || w.size() != 3) throw ParseError(line, "expected 'q <part> <id>'");
    const long long p = parse_integer(w[1], line);
    const Vertex v = parse_vertex(w[2], n, line);
    if (lab[v] != -1) throw ParseError(line, "vertex " + w[2] + " assigned twice");
    if (p < 0) throw ParseError(line, "part index must be non-negative");
    lab[v] = p;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (lab[v] < 0) throw ParseError(line, "vertex " + std::to_string(v) + " has no part");
  return Partition::from_labels(lab);
}

}  // namespace detail

/// Runs one algorithm on an instance. With a partition the question is the
/// Partition Connector one (f-factor connecting the parts); otherwise it is
/// the connected f-factor one. algorithm: auto, det, rand or brute.
inline SolveOutcome solve_instance(const Instance& inst, const std::string& algorithm, std::uint64_t seed,
                                   unsigned field_bits = 0, unsigned retries = 0) {
  SolveOutcome out;
  const Graph& g = inst.graph;
  if (algorithm == "brute") {
    out.factor = inst.partition ? brute_force_pc(g, inst.demand, *inst.partition) : brute_force_cff(g, inst.demand);
    return out;
  }
  if (inst.partition) {
    out.max_parts = inst.partition->size();
    if (algorithm == "rand") {
      std::mt19937_64 rng(seed);
      out.randomized = true;
      for (unsigned i = 0; i <= retries && !out.factor; ++i)
        out.factor = pc_randomized(g, inst.demand, *inst.partition, rng, field_bits);
    } else {
      out.factor = pc_deterministic(g, inst.demand, *inst.partition);
    }
    return out;
  }
  SolverConfig cfg;
  cfg.backend = algorithm == "det" ? Backend::kDeterministic : algorithm == "rand" ? Backend::kRandomized : Backend::kAuto;
  cfg.seed = seed;
  cfg.field_bits = field_bits;
  cfg.retries = retries;
  SolveResult r = connected_f_factor(g, inst.demand, cfg);
  out.randomized = r.trace.backend_used == Backend::kRandomized;
  out.rounds = r.trace.rounds.size();
  out.max_parts = r.trace.max_parts();
  out.factor = std::move(r.factor);
  out.trace = std::move(r.trace);
  return out;
}

inline int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Connected f-factors and partition connectors", "factorforge"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "decide and construct");
  std::string solve_file, algorithm = "auto", partition_file, trace_file;
  std::uint64_t seed = detail::default_seed();
  unsigned field_bits = 0, retries = 0;
  solve->add_option("instance", solve_file, "instance file")->required();
  solve->add_option("--algorithm", algorithm, "auto|det|rand|brute")
      ->check(CLI::IsMember({"auto", "det", "rand", "brute"}));
  solve->add_option("--seed", seed, "random seed (default $FACTORFORGE_SEED or 0)");
  solve->add_option("--field-bits", field_bits, "GF(2^k) size for the randomized backend (0: from n)")
      ->check(CLI::Range(0U, 255U));
  solve->add_option("--retries", retries, "extra randomized attempts");
  solve->add_option("--partition", partition_file, "file of 'q <part> <id>' lines; switches to connector mode");
  solve->add_option("--trace", trace_file, "write the refinement trace as JSON");

  // verify
  auto* verify = app.add_subcommand("verify", "check a factor file against an instance");
  std::string verify_instance, verify_factor, verify_partition;
  verify->add_option("instance", verify_instance, "instance file")->required();
  verify->add_option("factor", verify_factor, "factor file")->required();
  verify->add_option("--partition", verify_partition, "check connectivity across this partition instead");

  // generate
  auto* generate = app.add_subcommand("generate", "write an instance");
  std::string kind, family = "cycle", output;
  std::size_t n = 8, size = 5, s = 2, clusters = 2, max_edges = 0;
  double rate = 0.2, prob = 0.4;
  int max_demand = 0;
  std::uint64_t gen_seed = detail::default_seed();
  generate->add_option("kind", kind, "planted|hamiltonian|random|clustered")
      ->required()
      ->check(CLI::IsMember({"planted", "hamiltonian", "random", "clustered"}));
  generate->add_option("--n", n, "vertex count");
  generate->add_option("--rate", rate, "noise edge rate (planted, clustered)");
  generate->add_option("--p", prob, "edge probability (random)");
  generate->add_option("--max-edges", max_edges, "edge cap (random)");
  generate->add_option("--max-demand", max_demand, "demand cap (random)");
  generate->add_option("--family", family, "cycle|complete|cube|petersen (hamiltonian)")
      ->check(CLI::IsMember({"cycle", "complete", "cube", "petersen"}));
  generate->add_option("--size", size, "family size parameter (hamiltonian)");
  generate->add_option("--s", s, "clique size parameter, >= 2 (hamiltonian)");
  generate->add_option("--clusters", clusters, "cluster count (clustered)");
  generate->add_option("--seed", gen_seed, "random seed");
  generate->add_option("-o,--output", output, "output file (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "run a corpus directory, CSV on stdout");
  std::string corpus;
  std::vector<std::string> algorithms{"auto"};
  std::uint64_t bench_seed = detail::default_seed();
  bench->add_option("corpus", corpus, "directory of .cff files")->required();
  bench->add_option("--algorithms", algorithms, "algorithms to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"auto", "det", "rand", "brute"}));
  bench->add_option("--seed", bench_seed, "random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) {
      Instance inst = read_instance_file(solve_file);
      if (!partition_file.empty()) inst.partition = detail::read_partition_file(partition_file, inst.graph.vertex_count());
      SolveOutcome r = solve_instance(inst, algorithm, seed, field_bits, retries);
      if (!trace_file.empty()) {
        nlohmann::json j = r.trace ? detail::trace_json(*r.trace) : nlohmann::json{{"backend", algorithm}};
        j["answer"] = r.factor ? "yes" : "no";
        j["seed"] = seed;
        std::ofstream(trace_file) << j.dump(2) << '\n';
      }
      if (r.factor) {
        out << "s yes\n" << emit_factor(*r.factor);
        return kExitYes;
      }
      out << "s no\n";
      return r.randomized ? kExitRandomizedNo : kExitNo;
    }

    if (*verify) {
      const Instance inst = read_instance_file(verify_instance);
      std::ifstream fin(verify_factor);
      if (!fin) throw std::runtime_error("cannot open " + verify_factor);
      const FactorSubgraph h = parse_factor(fin, inst.graph);
      std::optional<Partition> q = inst.partition;
      if (!verify_partition.empty()) q = detail::read_partition_file(verify_partition, inst.graph.vertex_count());
      const FactorReport rep = verify_f_factor(inst.graph, inst.demand, h, q);
      out << "degrees-match=" << (rep.degrees_match ? "true" : "false") << '\n';
      out << "connected=" << (rep.is_connected ? "true" : "false") << '\n';
      if (rep.connects_partition) out << "connects-partition=" << (*rep.connects_partition ? "true" : "false") << '\n';
      for (Vertex v : rep.degree_mismatches) out << "mismatch " << v << '\n';
      const bool pass = rep.degrees_match && (q ? *rep.connects_partition : rep.is_connected);
      out << (pass ? "pass" : "fail") << '\n';
      return pass ? kExitYes : kExitError;
    }

    if (*generate) {
      std::optional<Instance> inst;
      if (kind == "planted") {
        inst = gen_planted({n, rate, gen_seed, 2}).instance;
      } else if (kind == "clustered") {
        inst = gen_clustered({n, clusters, 0, rate, gen_seed}).instance;
      } else if (kind == "random") {
        inst = gen_random({n, prob, max_edges, max_demand, gen_seed});
      } else {
        const Graph base = family == "cycle"      ? cycle_graph(size)
                           : family == "complete" ? complete_graph(size)
                           : family == "cube"     ? hypercube_graph(static_cast<unsigned>(size))
                                                  : petersen_graph();
        inst = gen_hamiltonian_reduction(base, s);
      }
      const std::string text = emit_instance(*inst);
      if (output.empty()) {
        out << text;
      } else {
        std::ofstream f(output);
        if (!f) throw std::runtime_error("cannot write " + output);
        f << text;
      }
      return kExitYes;
    }

    if (*bench) {
      namespace fs = std::filesystem;
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(corpus))
        if (entry.is_regular_file() && entry.path().extension() == ".cff") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      out << "instance,n,m,min_f,algorithm,answer,rounds,max_parts,wall_ms,seed\n";
      for (const auto& path : files) {
        const Instance inst = read_instance_file(path.string());
        for (const auto& alg : algorithms) {
          const auto t0 = std::chrono::steady_clock::now();
          std::string answer;
          SolveOutcome r;
          try {
            r = solve_instance(inst, alg, bench_seed);
            answer = r.factor ? "yes" : (r.randomized ? "no?" : "no");
          } catch (const SizeGuardExceeded&) {
            answer = "skipped";
          }
          const double ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          out << path.filename().string() << ',' << inst.graph.vertex_count() << ','
              << inst.graph.active_edge_count() << ',' << inst.demand.min() << ',' << alg << ',' << answer << ','
              << r.rounds << ',' << r.max_parts << ',' << ms << ',' << bench_seed << '\n';
        }
      }
      return kExitYes;
    }
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace factorforge
