// Builds a small instance, solves it with both backends, and checks the
// result. Returns nonzero if anything disagrees.
#include <iostream>

#include "factorforge/factorforge.hpp"

using namespace factorforge;

int main() {
  // Two triangles joined by a perfect matching; f = 2 everywhere.
  const Graph g = two_triangles_matching();
  const auto f = DegreeSpec::uniform(g.vertex_count(), 2);

  int status = 0;
  for (Backend b : {Backend::kDeterministic, Backend::kRandomized}) {
    SolverConfig cfg;
    cfg.backend = b;
    cfg.seed = 7;
    const SolveResult r = connected_f_factor(g, f, cfg);
    if (!r.factor) {
      std::cout << "no connected 2-factor found\n";
      status = 1;
      continue;
    }
    const FactorReport rep = verify_f_factor(g, f, *r.factor);
    std::cout << (b == Backend::kDeterministic ? "det" : "rand") << ": " << r.trace.rounds.size()
              << " rounds, connected=" << rep.is_connected << "\n"
              << emit_factor(*r.factor);
    if (!rep.is_connected_factor()) status = 1;
  }

  // Partition connector on the triangle split.
  const Partition q = Partition::from_labels(std::vector<long long>{0, 0, 0, 1, 1, 1});
  const auto pc = pc_deterministic(g, f, q);
  std::cout << "connector across triangles: " << (pc ? "yes" : "no") << "\n";
  if (!pc || !connects(*pc, q)) status = 1;

  // The Petersen graph has 2-factors but no Hamiltonian cycle.
  const Graph p = petersen_graph();
  if (connected_f_factor(p, DegreeSpec::uniform(10, 2)).factor) status = 1;
  return status;
}
