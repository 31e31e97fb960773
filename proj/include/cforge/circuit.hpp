#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "cforge/errors.hpp"

namespace cforge {

enum class GateOp : std::uint8_t { And = 0, Or = 1, Not = 2, Fork = 3, In = 4, Out = 5 };

// A vertex label. `port` is the 1-based input/output position for In/Out
// and 0 for the logic gates.
struct GateKind {
  GateOp op = GateOp::And;
  std::uint32_t port = 0;

  friend bool operator==(const GateKind&, const GateKind&) = default;
};

inline GateKind gate_and() { return {GateOp::And, 0}; }
inline GateKind gate_or() { return {GateOp::Or, 0}; }
inline GateKind gate_not() { return {GateOp::Not, 0}; }
inline GateKind gate_fork() { return {GateOp::Fork, 0}; }
inline GateKind gate_in(std::uint32_t i) { return {GateOp::In, i}; }
inline GateKind gate_out(std::uint32_t j) { return {GateOp::Out, j}; }

// Fixed label order: and, or, not, fork, in1..inm, out1..outn.
inline std::uint32_t gate_index(const GateKind& g, std::uint32_t m) {
  switch (g.op) {
    case GateOp::And: return 0;
    case GateOp::Or: return 1;
    case GateOp::Not: return 2;
    case GateOp::Fork: return 3;
    case GateOp::In: return 3 + g.port;
    case GateOp::Out: return 3 + m + g.port;
  }
  return 0;
}

inline std::string gate_name(const GateKind& g) {
  switch (g.op) {
    case GateOp::And: return "and";
    case GateOp::Or: return "or";
    case GateOp::Not: return "not";
    case GateOp::Fork: return "fork";
    case GateOp::In: return "in" + std::to_string(g.port);
    case GateOp::Out: return "out" + std::to_string(g.port);
  }
  return "?";
}

struct Edge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Ordered-vertex DAG with gate labels. A vertex id is its position in
// `vertices`; edges refer to those positions. The vertex order is part of
// the circuit, not an implementation detail: serialization follows it.
struct Circuit {
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::vector<GateKind> vertices;
  std::vector<Edge> edges;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// |C| = number of vertices plus number of edges.
inline std::size_t circuit_size(const Circuit& c) {
  return c.vertices.size() + c.edges.size();
}

inline std::vector<std::uint32_t> in_degrees(const Circuit& c) {
  std::vector<std::uint32_t> deg(c.vertices.size(), 0);
  for (const Edge& e : c.edges)
    if (e.dst < deg.size()) ++deg[e.dst];
  return deg;
}

inline std::vector<std::uint32_t> out_degrees(const Circuit& c) {
  std::vector<std::uint32_t> deg(c.vertices.size(), 0);
  for (const Edge& e : c.edges)
    if (e.src < deg.size()) ++deg[e.src];
  return deg;
}

struct Violation {
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }

  std::string summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const Violation& v : violations) {
      if (!s.empty()) s += "; ";
      s += v.message;
    }
    return s;
  }
};

inline ValidationReport validate(const Circuit& c) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back({std::move(msg)}); };

  const std::size_t v_count = c.vertices.size();
  if (c.m < 1) fail("circuit must have at least one input vertex");
  if (c.n < 1) fail("circuit must have at least one output vertex");

  bool edges_ok = true;
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const Edge& e = c.edges[i];
    if (e.src >= v_count || e.dst >= v_count) {
      fail("edge " + std::to_string(i) + ": endpoint out of range");
      edges_ok = false;
    }
  }
  if (!edges_ok) return report;

  std::vector<std::uint32_t> indeg = in_degrees(c);
  std::vector<std::uint32_t> outdeg = out_degrees(c);

  std::vector<std::uint32_t> in_seen(c.m + 1, 0);
  std::vector<std::uint32_t> out_seen(c.n + 1, 0);

  for (std::size_t v = 0; v < v_count; ++v) {
    const GateKind& g = c.vertices[v];
    const std::string at = "vertex " + std::to_string(v) + " (" + gate_name(g) + ")";
    switch (g.op) {
      case GateOp::And:
      case GateOp::Or:
        if (indeg[v] != 2) fail(at + ": in-degree " + std::to_string(indeg[v]) + ", expected 2");
        if (outdeg[v] != 1) fail(at + ": out-degree " + std::to_string(outdeg[v]) + ", expected 1");
        break;
      case GateOp::Not:
        if (indeg[v] != 1) fail(at + ": in-degree " + std::to_string(indeg[v]) + ", expected 1");
        if (outdeg[v] != 1) fail(at + ": out-degree " + std::to_string(outdeg[v]) + ", expected 1");
        break;
      case GateOp::Fork:
        if (indeg[v] != 1) fail(at + ": in-degree " + std::to_string(indeg[v]) + ", expected 1");
        if (outdeg[v] != 2) fail(at + ": out-degree " + std::to_string(outdeg[v]) + ", expected 2");
        break;
      case GateOp::In:
        // Out-degree 0 is allowed: some constructions add input vertices
        // that are not connected to anything.
        if (indeg[v] != 0) fail(at + ": in-degree " + std::to_string(indeg[v]) + ", expected 0");
        if (outdeg[v] > 1) fail(at + ": out-degree " + std::to_string(outdeg[v]) + ", expected 0 or 1");
        if (g.port < 1 || g.port > c.m)
          fail(at + ": input label out of range 1.." + std::to_string(c.m));
        else
          ++in_seen[g.port];
        break;
      case GateOp::Out:
        if (indeg[v] != 1) fail(at + ": in-degree " + std::to_string(indeg[v]) + ", expected 1");
        if (outdeg[v] != 0) fail(at + ": out-degree " + std::to_string(outdeg[v]) + ", expected 0");
        if (g.port < 1 || g.port > c.n)
          fail(at + ": output label out of range 1.." + std::to_string(c.n));
        else
          ++out_seen[g.port];
        break;
    }
  }

  for (std::uint32_t i = 1; i <= c.m; ++i)
    if (in_seen[i] != 1)
      fail("input label in" + std::to_string(i) + " appears " + std::to_string(in_seen[i]) +
           " times, expected exactly once");
  for (std::uint32_t j = 1; j <= c.n; ++j)
    if (out_seen[j] != 1)
      fail("output label out" + std::to_string(j) + " appears " + std::to_string(out_seen[j]) +
           " times, expected exactly once");

  // Acyclicity via Kahn elimination.
  {
    std::vector<std::uint32_t> deg = indeg;
    std::vector<std::uint32_t> ready;
    for (std::size_t v = 0; v < v_count; ++v)
      if (deg[v] == 0) ready.push_back(static_cast<std::uint32_t>(v));
    std::vector<std::vector<std::uint32_t>> succ(v_count);
    for (const Edge& e : c.edges) succ[e.src].push_back(e.dst);
    std::size_t removed = 0;
    while (!ready.empty()) {
      std::uint32_t v = ready.back();
      ready.pop_back();
      ++removed;
      for (std::uint32_t w : succ[v])
        if (--deg[w] == 0) ready.push_back(w);
    }
    if (removed != v_count) {
      for (std::size_t v = 0; v < v_count; ++v)
        if (deg[v] > 0) {
          fail("cycle through vertex " + std::to_string(v));
          break;
        }
    }
  }

  return report;
}

inline void require_valid(const Circuit& c) {
  ValidationReport r = validate(c);
  if (!r.ok()) throw validation_error("invalid circuit: " + r.summary());
}

// m disjoint identity wires in(i) -> out(i); size 3m.
inline Circuit identity_circuit(std::uint32_t m) {
  if (m == 0) throw std::invalid_argument("identity_circuit: empty");
  Circuit c;
  c.m = m;
  c.n = m;
  for (std::uint32_t i = 1; i <= m; ++i) c.vertices.push_back(gate_in(i));
  for (std::uint32_t j = 1; j <= m; ++j) c.vertices.push_back(gate_out(j));
  for (std::uint32_t i = 0; i < m; ++i) c.edges.push_back({i, m + i});
  return c;
}

// Keeps the first n of m coordinates; the remaining inputs dangle.
inline Circuit projection_circuit(std::uint32_t m, std::uint32_t n) {
  if (n == 0 || m < n) throw std::invalid_argument("projection_circuit: need m >= n >= 1");
  Circuit c;
  c.m = m;
  c.n = n;
  for (std::uint32_t i = 1; i <= m; ++i) c.vertices.push_back(gate_in(i));
  for (std::uint32_t j = 1; j <= n; ++j) c.vertices.push_back(gate_out(j));
  for (std::uint32_t i = 0; i < n; ++i) c.edges.push_back({i, m + i});
  return c;
}

}  // namespace cforge
