#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#ifdef CLI_BINARY
#include <sys/wait.h>
#endif

#include "cforge/circuit.hpp"
#include "cforge/enumerate.hpp"
#include "cforge/formula.hpp"

namespace test_support {

// Second-implementation circuit generator, deliberately different from the
// library's: pick the internal gate multiset, then try every assignment of
// input slots to producing vertices, and keep what validates. Only usable
// for very small size caps.
inline std::vector<cforge::Circuit> brute_force_circuits(std::uint32_t m, std::uint32_t n,
                                                         std::uint32_t max_size) {
  using namespace cforge;
  std::vector<Circuit> found;
  std::set<std::string> seen;

  // Nondecreasing sequences over {And, Or, Not, Fork}.
  std::vector<std::vector<GateOp>> kind_lists;
  std::vector<GateOp> current;
  const std::array<GateOp, 4> ops = {GateOp::And, GateOp::Or, GateOp::Not, GateOp::Fork};
  auto gen_kinds = [&](auto&& self, std::size_t from) -> void {
    kind_lists.push_back(current);
    if (current.size() >= 6) return;
    for (std::size_t i = from; i < ops.size(); ++i) {
      current.push_back(ops[i]);
      self(self, i);
      current.pop_back();
    }
  };
  gen_kinds(gen_kinds, 0);

  for (const std::vector<GateOp>& kinds : kind_lists) {
    std::vector<GateKind> verts;
    for (std::uint32_t i = 1; i <= m; ++i) verts.push_back(gate_in(i));
    for (GateOp op : kinds) verts.push_back({op, 0});
    for (std::uint32_t j = 1; j <= n; ++j) verts.push_back(gate_out(j));
    const std::uint32_t v_count = static_cast<std::uint32_t>(verts.size());

    std::vector<std::uint32_t> slots;  // vertices repeated per input slot
    for (std::uint32_t v = 0; v < v_count; ++v) {
      switch (verts[v].op) {
        case GateOp::And:
        case GateOp::Or: slots.push_back(v); slots.push_back(v); break;
        case GateOp::Not:
        case GateOp::Fork:
        case GateOp::Out: slots.push_back(v); break;
        case GateOp::In: break;
      }
    }
    if (v_count + slots.size() > max_size) continue;
    if (slots.size() > 8) continue;  // keep the oracle cheap

    std::vector<std::uint32_t> choice(slots.size(), 0);
    while (true) {
      Circuit c;
      c.m = m;
      c.n = n;
      c.vertices = verts;
      for (std::size_t s = 0; s < slots.size(); ++s)
        c.edges.push_back({choice[s], slots[s]});
      if (circuit_size(c) <= max_size && validate(c).ok()) {
        Circuit canon = canonical_form(c);
        std::string key = encode(canon).str();
        if (seen.insert(key).second) found.push_back(std::move(canon));
      }
      std::size_t pos = 0;
      for (; pos < choice.size(); ++pos) {
        if (++choice[pos] < v_count) break;
        choice[pos] = 0;
      }
      if (pos == choice.size()) break;
    }
  }
  std::sort(found.begin(), found.end(), [](const Circuit& a, const Circuit& b) {
    const std::size_t sa = circuit_size(a), sb = circuit_size(b);
    if (sa != sb) return sa < sb;
    return encode(a).str() < encode(b).str();
  });
  return found;
}

inline std::set<std::string> key_set(const std::vector<cforge::Circuit>& list) {
  std::set<std::string> keys;
  for (const cforge::Circuit& c : list) keys.insert(cforge::encode(c).str());
  return keys;
}

// Random valid circuit: random gate insertions over open wires, then the
// wire budget is balanced and closed with output vertices. Same move set
// as the exhaustive enumerator, but freewheeling and unbounded by size.
inline cforge::Circuit random_circuit(std::mt19937& rng, std::uint32_t m, std::uint32_t n,
                                      std::uint32_t target_gates) {
  using namespace cforge;
  struct G {
    GateOp op;
    std::uint32_t a, b;
  };
  std::vector<G> gates;
  std::vector<std::uint32_t> open;
  for (std::uint32_t i = 0; i < m; ++i) open.push_back(i);
  auto gate_open = [&] {
    std::uint32_t k = 0;
    for (std::uint32_t w : open)
      if (w >= m) ++k;
    return k;
  };
  auto take = [&](std::uint32_t idx) {
    std::uint32_t w = open[idx];
    open.erase(open.begin() + idx);
    return w;
  };
  auto add = [&](GateOp op, std::uint32_t a, std::uint32_t b, std::uint32_t produced) {
    const std::uint32_t id = m + static_cast<std::uint32_t>(gates.size());
    gates.push_back({op, a, b});
    for (std::uint32_t k = 0; k < produced; ++k) open.push_back(id);
  };

  while (gates.size() < target_gates) {
    const int move = static_cast<int>(rng() % 4);
    if ((move == 0 || move == 1) && open.size() >= 2) {
      std::uint32_t i = rng() % open.size();
      std::uint32_t a = take(i);
      std::uint32_t b = take(rng() % open.size());
      add(move == 0 ? GateOp::And : GateOp::Or, std::min(a, b), std::max(a, b), 1);
    } else if (!open.empty()) {
      std::uint32_t a = take(rng() % open.size());
      add(move == 2 ? GateOp::Not : GateOp::Fork, a, 0, move == 2 ? 1 : 2);
    }
  }
  // Merge surplus gate wires down to at most n of them.
  while (gate_open() > n) {
    std::vector<std::uint32_t> gate_idx;
    for (std::uint32_t i = 0; i < open.size(); ++i)
      if (open[i] >= m) gate_idx.push_back(i);
    std::uint32_t b = take(gate_idx[gate_idx.size() - 1]);
    std::uint32_t a = take(gate_idx[gate_idx.size() - 2]);
    add(GateOp::And, std::min(a, b), std::max(a, b), 1);
  }
  // Fork something until enough wires exist to feed every output. A fork
  // never pushes the mandatory gate-wire count past n here: it consumes
  // one wire that the deficit already accounted for.
  while (open.size() < n) {
    std::uint32_t a = take(rng() % open.size());
    add(GateOp::Fork, a, 0, 2);
  }

  Circuit c;
  c.m = m;
  c.n = n;
  for (std::uint32_t i = 1; i <= m; ++i) c.vertices.push_back(gate_in(i));
  for (const G& g : gates) {
    const std::uint32_t id = static_cast<std::uint32_t>(c.vertices.size());
    switch (g.op) {
      case GateOp::And: c.vertices.push_back(gate_and()); break;
      case GateOp::Or: c.vertices.push_back(gate_or()); break;
      case GateOp::Not: c.vertices.push_back(gate_not()); break;
      case GateOp::Fork: c.vertices.push_back(gate_fork()); break;
      default: break;
    }
    c.edges.push_back({g.a, id});
    if (g.op == GateOp::And || g.op == GateOp::Or) c.edges.push_back({g.b, id});
  }
  // Outputs take every open gate wire plus input wires as needed.
  std::vector<std::uint32_t> drivers;
  for (std::uint32_t w : open)
    if (w >= m) drivers.push_back(w);
  for (std::uint32_t w : open)
    if (w < m && drivers.size() < n) drivers.push_back(w);
  std::shuffle(drivers.begin(), drivers.end(), rng);
  for (std::uint32_t j = 1; j <= n; ++j) {
    const std::uint32_t id = static_cast<std::uint32_t>(c.vertices.size());
    c.vertices.push_back(gate_out(j));
    c.edges.push_back({drivers[j - 1], id});
  }
  return c;
}

// Random AST with variables renumbered by first appearance afterwards.
inline cforge::Formula random_formula(std::mt19937& rng, std::uint32_t max_vars,
                                      std::uint32_t depth) {
  using cforge::Formula;
  auto build = [&](auto&& self, std::uint32_t d) -> Formula {
    std::uniform_int_distribution<int> pick(0, d == 0 ? 0 : 3);
    switch (pick(rng)) {
      case 1: return f_not(self(self, d - 1));
      case 2: return f_and(self(self, d - 1), self(self, d - 1));
      case 3: return f_or(self(self, d - 1), self(self, d - 1));
      default: {
        std::uniform_int_distribution<std::uint32_t> var(1, max_vars);
        return Formula::variable(var(rng));
      }
    }
  };
  Formula raw = build(build, depth);

  // First-appearance renumbering keeps indices dense.
  std::vector<std::uint32_t> map(max_vars + 1, 0);
  std::uint32_t next = 0;
  auto walk = [&](auto&& self, std::uint32_t node) -> void {
    const Formula::Node& nd = raw.node(node);
    switch (nd.kind) {
      case Formula::NodeKind::Var:
        if (map[nd.var] == 0) map[nd.var] = ++next;
        break;
      case Formula::NodeKind::Not: self(self, nd.child0); break;
      case Formula::NodeKind::And:
      case Formula::NodeKind::Or:
        self(self, nd.child0);
        self(self, nd.child1);
        break;
      default: break;
    }
  };
  walk(walk, raw.root());
  return raw.remap_variables(map, next);
}

#ifdef CLI_BINARY
struct CliResult {
  int exit_code = -1;
  std::string output;
};

inline CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  CliResult result;
  std::string command = (env_prefix.empty() ? "" : env_prefix + " ") + std::string(CLI_BINARY) +
                        " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
  int status = pclose(pipe);
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return result;
}
#endif

}  // namespace test_support
