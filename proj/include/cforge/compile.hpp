#pragma once

#include <cstdint>
#include <vector>

#include "cforge/circuit.hpp"
#include "cforge/errors.hpp"
#include "cforge/formula.hpp"

namespace cforge {

namespace detail {

// Counting pass. Constants consume two taps of x1 each (one straight, one
// through a not), so they register as two uses.
inline void count_compile_uses(const Formula& f, std::uint32_t node,
                               std::vector<std::uint32_t>& uses) {
  const Formula::Node& nd = f.node(node);
  switch (nd.kind) {
    case Formula::NodeKind::Var: ++uses[nd.var]; break;
    case Formula::NodeKind::Const: uses[1] += 2; break;
    case Formula::NodeKind::Not: count_compile_uses(f, nd.child0, uses); break;
    case Formula::NodeKind::And:
    case Formula::NodeKind::Or:
      count_compile_uses(f, nd.child0, uses);
      count_compile_uses(f, nd.child1, uses);
      break;
  }
}

}  // namespace detail

// Compiles a vector of formulas over a shared variable space into one
// circuit with inputs 1..var_count and one output per formula. A variable
// used r > 1 times is distributed through a left-deep chain of r-1 fork
// gates, taps handed out in textual order across the outputs.
inline Circuit compile_formulas(const std::vector<Formula>& outputs, std::uint32_t var_count) {
  if (var_count < 1) throw std::invalid_argument("compile: need at least one variable");
  if (outputs.empty()) throw std::invalid_argument("compile: need at least one output");
  for (const Formula& f : outputs)
    if (f.var_count() > var_count)
      throw std::invalid_argument("compile: formula exceeds the variable space");

  std::vector<std::uint32_t> uses(var_count + 1, 0);
  for (const Formula& f : outputs) detail::count_compile_uses(f, f.root(), uses);

  Circuit c;
  c.m = var_count;
  c.n = static_cast<std::uint32_t>(outputs.size());
  for (std::uint32_t i = 1; i <= var_count; ++i) c.vertices.push_back(gate_in(i));

  std::vector<std::vector<std::uint32_t>> chain(var_count + 1);
  auto add_gate = [&](GateKind kind) {
    c.vertices.push_back(kind);
    return static_cast<std::uint32_t>(c.vertices.size() - 1);
  };

  for (std::uint32_t v = 1; v <= var_count; ++v) {
    if (uses[v] < 2) continue;
    std::uint32_t prev = v - 1;  // vertex id of in(v)
    for (std::uint32_t k = 1; k < uses[v]; ++k) {
      std::uint32_t fork = add_gate(gate_fork());
      c.edges.push_back({prev, fork});
      chain[v].push_back(fork);
      prev = fork;
    }
  }

  std::vector<std::uint32_t> next_use(var_count + 1, 1);
  auto take_tap = [&](std::uint32_t v) -> std::uint32_t {
    const std::uint32_t r = uses[v];
    const std::uint32_t k = next_use[v]++;
    if (r == 1) return v - 1;
    if (k < r) return chain[v][k - 1];
    return chain[v][r - 2];
  };

  struct Builder {
    Circuit& c;
    decltype(take_tap)& tap;
    decltype(add_gate)& gate;

    std::uint32_t build(const Formula& f, std::uint32_t node) {
      const Formula::Node& nd = f.node(node);
      switch (nd.kind) {
        case Formula::NodeKind::Var:
          return tap(nd.var);
        case Formula::NodeKind::Const: {
          std::uint32_t a = tap(1);
          std::uint32_t b = tap(1);
          std::uint32_t neg = gate(gate_not());
          c.edges.push_back({b, neg});
          std::uint32_t g = gate(nd.value ? gate_or() : gate_and());
          c.edges.push_back({a, g});
          c.edges.push_back({neg, g});
          return g;
        }
        case Formula::NodeKind::Not: {
          std::uint32_t w = build(f, nd.child0);
          std::uint32_t g = gate(gate_not());
          c.edges.push_back({w, g});
          return g;
        }
        case Formula::NodeKind::And:
        case Formula::NodeKind::Or: {
          std::uint32_t w0 = build(f, nd.child0);
          std::uint32_t w1 = build(f, nd.child1);
          std::uint32_t g = gate(nd.kind == Formula::NodeKind::And ? gate_and() : gate_or());
          c.edges.push_back({w0, g});
          c.edges.push_back({w1, g});
          return g;
        }
      }
      return 0;
    }
  };

  Builder builder{c, take_tap, add_gate};
  std::vector<std::uint32_t> roots;
  roots.reserve(outputs.size());
  for (const Formula& f : outputs) roots.push_back(builder.build(f, f.root()));

  for (std::uint32_t j = 1; j <= c.n; ++j) {
    c.vertices.push_back(gate_out(j));
    c.edges.push_back({roots[j - 1], static_cast<std::uint32_t>(c.vertices.size() - 1)});
  }
  return c;
}

inline Circuit compile_formula(const Formula& f) {
  if (f.var_count() < 1) throw std::invalid_argument("compile: need at least one variable");
  return compile_formulas({f}, f.var_count());
}

}  // namespace cforge
