#pragma once

// Line-oriented text formats. Vertex ids are 0-based.
//
// Instance:                       Factor (solve output works too):
//   c any comment                   f <u> <v>
//   c expect yes|no <provenance>
//   p cff <n> <m>
//   v <id> <demand>    (one per vertex)
//   e <u> <v>          (m lines)
//   q <part> <id>      (optional; then one per vertex)

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "factorforge/errors.hpp"
#include "factorforge/generators.hpp"
#include "factorforge/graph.hpp"

namespace factorforge {

namespace detail {

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> w;
  for (std::string s; in >> s;) w.push_back(s);
  return w;
}

inline long long parse_integer(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw ParseError(line, "expected an integer, got '" + s + "'");
  return v;
}

inline Vertex parse_vertex(const std::string& s, std::size_t n, std::size_t line) {
  const long long v = parse_integer(s, line);
  if (v < 0 || static_cast<unsigned long long>(v) >= n) {
    throw ParseError(line, "vertex " + s + " out of range [0, " + std::to_string(n) + ")");
  }
  return static_cast<Vertex>(v);
}

}  // namespace detail

inline Instance parse_instance(std::istream& in) {
  std::optional<std::size_t> n, m;
  std::vector<std::optional<int>> demand;
  EdgeList edges;
  std::map<Vertex, long long> labels;
  std::optional<Annotation> annotation;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto w = detail::split_words(raw);
    if (w.empty()) continue;
    const std::string& tag = w[0];
    if (tag == "c") {
      if (w.size() >= 3 && w[1] == "expect") {
        if (w[2] != "yes" && w[2] != "no") throw ParseError(line, "expectation must be yes or no");
        std::string prov;
        for (std::size_t i = 3; i < w.size(); ++i) prov += (i > 3 ? " " : "") + w[i];
        annotation = Annotation{w[2] == "yes", prov};
      }
      continue;
    }
    if (tag == "p") {
      if (n) throw ParseError(line, "second header line");
      if (w.size() != 4 || w[1] != "cff") throw ParseError(line, "header must read 'p cff <n> <m>'");
      const long long nn = detail::parse_integer(w[2], line), mm = detail::parse_integer(w[3], line);
      if (nn < 0 || mm < 0) throw ParseError(line, "negative size in header");
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      demand.assign(*n, std::nullopt);
      continue;
    }
    if (!n) throw ParseError(line, "'" + tag + "' line before the header");
    if (tag == "v") {
      if (w.size() != 3) throw ParseError(line, "expected 'v <id> <demand>'");
      const Vertex v = detail::parse_vertex(w[1], *n, line);
      if (demand[v]) throw ParseError(line, "demand of vertex " + w[1] + " given twice");
      const long long f = detail::parse_integer(w[2], line);
      if (f < 0 || f > 1'000'000'000) throw ParseError(line, "demand out of range");
      demand[v] = static_cast<int>(f);
    } else if (tag == "e") {
      if (w.size() != 3) throw ParseError(line, "expected 'e <u> <v>'");
      edges.emplace_back(detail::parse_vertex(w[1], *n, line), detail::parse_vertex(w[2], *n, line));
    } else if (tag == "q") {
      if (w.size() != 3) throw ParseError(line, "expected 'q <part> <id>'");
      const long long part = detail::parse_integer(w[1], line);
      const Vertex v = detail::parse_vertex(w[2], *n, line);
      if (!labels.emplace(v, part).second) throw ParseError(line, "vertex " + w[2] + " assigned to two parts");
    } else {
      throw ParseError(line, "unknown line type '" + tag + "'");
    }
  }
  if (!n) throw ParseError(line, "missing 'p cff' header");
  if (edges.size() != *m) {
    throw ParseError(line, "header promises " + std::to_string(*m) + " edges, found " + std::to_string(edges.size()));
  }
  std::vector<int> f(*n);
  for (std::size_t v = 0; v < *n; ++v) {
    if (!demand[v]) throw ParseError(line, "no demand for vertex " + std::to_string(v));
    f[v] = *demand[v];
  }
  std::optional<Partition> partition;
  if (!labels.empty()) {
    if (labels.size() != *n) throw ParseError(line, "partition lines must cover every vertex");
    std::vector<long long> lab(*n);
    for (auto [v, p] : labels) lab[v] = p;
    partition = Partition::from_labels(lab);
  }
  try {
    Graph g(*n, std::move(edges));
    return Instance{std::move(g), DegreeSpec(std::move(f)), std::move(partition), std::move(annotation)};
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ParseError(line, ex.what());
  }
}

inline Instance parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

inline Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_instance(in);
}

/// Canonical text: annotation, header, demands by vertex, edges by id,
/// partition by vertex.
inline std::string emit_instance(const Instance& inst) {
  std::ostringstream out;
  const Graph& g = inst.graph;
  if (inst.annotation) {
    out << "c expect " << (inst.annotation->answer ? "yes" : "no");
    if (!inst.annotation->provenance.empty()) out << ' ' << inst.annotation->provenance;
    out << '\n';
  }
  out << "p cff " << g.vertex_count() << ' ' << g.active_edge_count() << '\n';
  for (Vertex v = 0; v < g.vertex_count(); ++v) out << "v " << v << ' ' << inst.demand[v] << '\n';
  for (EdgeId e : g.active_edges()) out << "e " << g.edge(e).u << ' ' << g.edge(e).v << '\n';
  if (inst.partition)
    for (Vertex v = 0; v < g.vertex_count(); ++v) out << "q " << inst.partition->part_of(v) << ' ' << v << '\n';
  return out.str();
}

inline bool same_instance(const Instance& a, const Instance& b) {
  if (a.graph.vertex_count() != b.graph.vertex_count() || a.graph.active_edges() != b.graph.active_edges())
    return false;
  for (EdgeId e : a.graph.active_edges())
    if (a.graph.edge(e) != b.graph.edge(e)) return false;
  return a.demand == b.demand && a.partition == b.partition && a.annotation == b.annotation;
}

inline std::string emit_factor(const FactorSubgraph& h) {
  std::ostringstream out;
  for (EdgeId e : h.edges()) out << "f " << h.host().edge(e).u << ' ' << h.host().edge(e).v << '\n';
  return out.str();
}

inline FactorSubgraph parse_factor(std::istream& in, const Graph& g) {
  FactorSubgraph h(g);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto w = detail::split_words(raw);
    if (w.empty() || w[0] == "c" || w[0] == "s") continue;  // solve output parses as is
    if (w[0] != "f" || w.size() != 3) throw ParseError(line, "expected 'f <u> <v>'");
    const Vertex a = detail::parse_vertex(w[1], g.vertex_count(), line);
    const Vertex b = detail::parse_vertex(w[2], g.vertex_count(), line);
    const auto e = g.find_edge(a, b);
    if (!e || !g.active(*e)) throw ParseError(line, "factor edge " + w[1] + "-" + w[2] + " is not in the graph");
    if (h.contains(*e)) throw ParseError(line, "factor edge " + w[1] + "-" + w[2] + " listed twice");
    h.insert(*e);
  }
  return h;
}

inline FactorSubgraph parse_factor_string(const std::string& text, const Graph& g) {
  std::istringstream in(text);
  return parse_factor(in, g);
}

}  // namespace factorforge
