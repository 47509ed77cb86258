#pragma once

// Connected f-factors by refinement: start from any f-factor H and the
// trivial partition; while H splits some part into several components,
// refine the partition to those components, ask a Partition Connector for
// an f-factor connecting the finer partition, and switch H toward it.
// Every round strictly increases the number of parts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "factorforge/alternating.hpp"
#include "factorforge/factor.hpp"
#include "factorforge/graph.hpp"
#include "factorforge/partition_connector.hpp"
#include "factorforge/randomized_pc.hpp"

namespace factorforge {

enum class Backend { kDeterministic, kRandomized, kAuto };

enum class AssertionLevel { kNone, kContracts };

struct SolverConfig {
  Backend backend = Backend::kAuto;
  std::uint64_t seed = 0;
  std::optional<std::size_t> round_limit;
  AssertionLevel assertions = AssertionLevel::kContracts;
  unsigned retries = 0;     // extra randomized attempts with fresh randomness
  unsigned field_bits = 0;  // 0: size from n
  // Edge ids of an f-factor to start from instead of computing one.
  std::optional<std::vector<EdgeId>> initial;
};

struct TraceRound {
  std::size_t round = 0;
  std::size_t parts = 0;
  std::vector<std::size_t> part_sizes;
  std::size_t backend_calls = 0;
  std::size_t repair_circuits = 0;
  std::size_t forced_edges = 0;
  std::optional<long long> degree_drop_slack;
  bool terminal = false;  // H already connected every part; nothing refined
};

struct SequenceTrace {
  Backend backend_used = Backend::kDeterministic;
  std::vector<TraceRound> rounds;

  std::size_t max_parts() const {
    std::size_t m = 0;
    for (const auto& r : rounds) m = std::max(m, r.parts);
    return m;
  }
};

struct SolveResult {
  std::optional<FactorSubgraph> factor;
  SequenceTrace trace;
};

/// Randomized when ceil(n / min f) <= ceil(log2 n) + 1, deterministic
/// otherwise.
inline Backend resolve_backend(Backend requested, std::size_t n, int min_f) {
  if (requested != Backend::kAuto) return requested;
  if (min_f <= 0 || n < 2) return Backend::kDeterministic;
  const auto g = (n + static_cast<std::size_t>(min_f) - 1) / static_cast<std::size_t>(min_f);
  const auto lg = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
  return g <= lg + 1 ? Backend::kRandomized : Backend::kDeterministic;
}

namespace detail {

inline std::vector<std::size_t> part_sizes(const Partition& q) {
  std::vector<std::size_t> s;
  for (const auto& p : q.parts()) s.push_back(p.size());
  return s;
}

}  // namespace detail

inline SolveResult connected_f_factor(const Graph& g, const DegreeSpec& f, const SolverConfig& cfg = {}) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("graph has no vertices");
  if (f.size() != n) throw std::invalid_argument("demand size does not match graph");
  SolveResult out;
  out.trace.backend_used = resolve_backend(cfg.backend, n, f.min());
  const bool check = cfg.assertions == AssertionLevel::kContracts;

  if (n == 1) {
    if (f[0] == 0) out.factor = FactorSubgraph(g);
    return out;
  }
  if (f.min() == 0) return out;

  std::optional<FactorSubgraph> first;
  if (cfg.initial) {
    first.emplace(g);
    for (EdgeId e : *cfg.initial) {
      if (e >= g.edge_count() || !g.active(e) || first->contains(e))
        throw std::invalid_argument("initial factor has a bad edge id");
      first->insert(e);
    }
    if (!verify_f_factor(g, f, *first).degrees_match) throw std::invalid_argument("initial factor is not an f-factor");
  } else {
    first = find_f_factor(g, f);
  }
  if (!first) return out;
  FactorSubgraph h = std::move(*first);
  Partition q = Partition::whole(n);
  std::mt19937_64 rng(cfg.seed);
  const std::size_t limit = std::min(cfg.round_limit.value_or(n), n);

  for (std::size_t round = 1;; ++round) {
    TraceRound tr;
    tr.round = round;
    const Refinement ref = refine_by_components(h, q);
    tr.parts = ref.partition.size();
    tr.part_sizes = detail::part_sizes(ref.partition);
    if (ref.unchanged) {
      tr.terminal = true;
      out.trace.rounds.push_back(std::move(tr));
      FF_ENSURE(verify_f_factor(g, f, h).is_connected_factor(), "final factor is not a connected f-factor");
      out.factor = std::move(h);
      return out;
    }
    if (check) {
      FF_ENSURE(ref.partition.refines(q) && ref.partition.size() > q.size(), "refinement did not add parts");
    }
    if (round > limit) {
      out.trace.rounds.push_back(std::move(tr));
      return out;
    }

    std::optional<FactorSubgraph> connector;
    if (out.trace.backend_used == Backend::kRandomized) {
      for (unsigned attempt = 0; attempt <= cfg.retries && !connector; ++attempt) {
        RandomizedPcStats st;
        connector = pc_randomized(g, f.values(), ref.partition, rng, cfg.field_bits, &st);
        tr.backend_calls += st.existence_tests;
      }
    } else {
      PcStats st;
      connector = pc_deterministic(g, f.values(), ref.partition, &st);
      tr.backend_calls = st.factor_queries;
    }
    if (!connector) {
      out.trace.rounds.push_back(std::move(tr));
      return out;
    }

    RepairResult rep = repair_close_factor(h, q, *connector, ref.partition);
    tr.repair_circuits = rep.circuits;
    tr.forced_edges = rep.forced.size();
    tr.degree_drop_slack = rep.slack;
    if (check) {
      const auto report = verify_f_factor(g, f, rep.factor, ref.partition);
      FF_ENSURE(report.degrees_match && report.connects_partition.value_or(false),
                "round " + std::to_string(round) + " factor does not connect its partition");
      FF_ENSURE(degree_drop_slack(h, rep.factor, ref.partition) >= 0, "degree-drop bound violated");
    }
    out.trace.rounds.push_back(std::move(tr));
    h = std::move(rep.factor);
    q = ref.partition;
  }
}

// Results keep a reference to the host graph, so temporaries are rejected.
template <class... A>
void connected_f_factor(const Graph&&, A&&...) = delete;

struct BoundsReport {
  double g = 0;
  std::size_t bound = 0;  // ceil(g) + 1
  bool strict = false;    // n >= 6 g^4
  bool parts_within = true;
  bool rounds_within = true;
  bool strictly_increasing = true;
  std::vector<std::string> violations;

  /// Violations that count: growth always, the size bound only in strict mode.
  bool ok() const { return strictly_increasing && (!strict || (parts_within && rounds_within)); }
};

inline BoundsReport assert_sequence_bounds(const SequenceTrace& trace, const Graph& g, const DegreeSpec& f) {
  BoundsReport r;
  const double n = static_cast<double>(g.vertex_count());
  const int mf = f.min();
  if (mf <= 0) {
    r.violations.push_back("minimum demand is zero; bound undefined");
    r.parts_within = r.rounds_within = false;
    return r;
  }
  r.g = n / mf;
  r.bound = static_cast<std::size_t>(std::ceil(r.g - 1e-9)) + 1;
  r.strict = n >= 6.0 * std::pow(r.g, 4);
  for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
    const auto& rd = trace.rounds[i];
    if (rd.parts > r.bound) {
      r.parts_within = false;
      r.violations.push_back("round " + std::to_string(rd.round) + " has " + std::to_string(rd.parts) + " parts");
    }
    // A terminal round repeats the previous partition.
    const bool repeat = rd.terminal && rd.parts == (i > 0 ? trace.rounds[i - 1].parts : 1);
    if (i > 0 && rd.parts <= trace.rounds[i - 1].parts && !repeat) {
      r.strictly_increasing = false;
      r.violations.push_back("round " + std::to_string(rd.round) + " does not add parts");
    }
  }
  if (trace.rounds.size() > r.bound) {
    r.rounds_within = false;
    r.violations.push_back("trace has " + std::to_string(trace.rounds.size()) + " rounds");
  }
  return r;
}

}  // namespace factorforge
