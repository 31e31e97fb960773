#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cforge/circuit.hpp"
#include "cforge/errors.hpp"
#include "cforge/function_table.hpp"

namespace cforge {

enum class PaddingKind { IdentityWires, DanglingInputs, ConstantZeroOutputs };

struct PaddingRecord {
  PaddingKind kind = PaddingKind::IdentityWires;
  std::uint32_t count = 0;
  std::uint32_t original_m = 0;
  std::uint32_t original_n = 0;
};

// Appends j fresh wires in(m+k) -> out(n+k); size grows by exactly 3j.
inline std::pair<Circuit, PaddingRecord> add_identity_wires(const Circuit& c, std::uint32_t j) {
  PaddingRecord rec{PaddingKind::IdentityWires, j, c.m, c.n};
  Circuit r = c;
  r.m = c.m + j;
  r.n = c.n + j;
  const std::uint32_t base = static_cast<std::uint32_t>(r.vertices.size());
  for (std::uint32_t k = 1; k <= j; ++k) r.vertices.push_back(gate_in(c.m + k));
  for (std::uint32_t k = 1; k <= j; ++k) r.vertices.push_back(gate_out(c.n + k));
  for (std::uint32_t k = 0; k < j; ++k) r.edges.push_back({base + k, base + j + k});
  return {r, rec};
}

// New input vertices not connected to anything; the function ignores them.
inline std::pair<Circuit, PaddingRecord> add_dangling_inputs(const Circuit& c, std::uint32_t k) {
  PaddingRecord rec{PaddingKind::DanglingInputs, k, c.m, c.n};
  Circuit r = c;
  r.m = c.m + k;
  for (std::uint32_t i = 1; i <= k; ++i) r.vertices.push_back(gate_in(c.m + i));
  return {r, rec};
}

namespace detail {

inline std::uint32_t find_vertex(const Circuit& c, GateOp op, std::uint32_t port) {
  for (std::uint32_t v = 0; v < c.vertices.size(); ++v)
    if (c.vertices[v].op == op && c.vertices[v].port == port) return v;
  throw validation_error("vertex lookup failed");
}

// Taps x1 through forks and feeds x1 & !x1 into out(next_port). Returns
// the id of the and-gate so more zero outputs can fork off its wire.
inline std::uint32_t append_first_constant_zero(Circuit& c, std::uint32_t next_port) {
  const std::uint32_t x1 = find_vertex(c, GateOp::In, 1);
  std::optional<std::size_t> used_edge;
  for (std::size_t i = 0; i < c.edges.size(); ++i)
    if (c.edges[i].src == x1) {
      used_edge = i;
      break;
    }

  auto add = [&](GateKind kind) {
    c.vertices.push_back(kind);
    return static_cast<std::uint32_t>(c.vertices.size() - 1);
  };

  std::uint32_t copies;  // fork whose two outputs feed the and/not pair
  if (used_edge) {
    const std::uint32_t target = c.edges[*used_edge].dst;
    c.edges.erase(c.edges.begin() + static_cast<std::ptrdiff_t>(*used_edge));
    std::uint32_t split = add(gate_fork());
    copies = add(gate_fork());
    c.edges.push_back({x1, split});
    c.edges.push_back({split, target});
    c.edges.push_back({split, copies});
  } else {
    copies = add(gate_fork());
    c.edges.push_back({x1, copies});
  }
  std::uint32_t neg = add(gate_not());
  std::uint32_t conj = add(gate_and());
  c.edges.push_back({copies, neg});
  c.edges.push_back({copies, conj});
  c.edges.push_back({neg, conj});

  std::uint32_t out = add(gate_out(next_port));
  c.edges.push_back({conj, out});
  return conj;
}

}  // namespace detail

// Makes m' = n' = max(m, n): dangling inputs when m < n, constant-zero
// outputs when m > n.
inline std::pair<Circuit, PaddingRecord> equalize_io(const Circuit& c) {
  if (c.m == c.n) return {c, PaddingRecord{PaddingKind::DanglingInputs, 0, c.m, c.n}};
  if (c.m < c.n) return add_dangling_inputs(c, c.n - c.m);

  const std::uint32_t k = c.m - c.n;
  PaddingRecord rec{PaddingKind::ConstantZeroOutputs, k, c.m, c.n};
  Circuit r = c;
  r.n = c.m;

  std::uint32_t zero_src = detail::append_first_constant_zero(r, c.n + 1);
  std::uint32_t zero_dst = static_cast<std::uint32_t>(r.vertices.size() - 1);
  for (std::uint32_t extra = 2; extra <= k; ++extra) {
    // Fork the wire feeding the newest zero output.
    for (std::size_t i = 0; i < r.edges.size(); ++i)
      if (r.edges[i].src == zero_src && r.edges[i].dst == zero_dst) {
        r.edges.erase(r.edges.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
    r.vertices.push_back(gate_fork());
    const std::uint32_t fork = static_cast<std::uint32_t>(r.vertices.size() - 1);
    r.vertices.push_back(gate_out(c.n + extra));
    const std::uint32_t out = static_cast<std::uint32_t>(r.vertices.size() - 1);
    r.edges.push_back({zero_src, fork});
    r.edges.push_back({fork, zero_dst});
    r.edges.push_back({fork, out});
    zero_src = fork;
    zero_dst = out;
  }
  return {r, rec};
}

struct SurjectiveNormalization {
  Circuit c1;
  Circuit c2;
  PaddingRecord wires;
  PaddingRecord dangling;
};

// C1 = C plus |C| identity wires, so |C1| = 4|C| and m1 <= |C1|/2 < 2n1.
// C2 = C1 plus 2n1 - m1 + 1 dangling inputs, landing in the band
// 2n2 < m2 <= |C2| <= 6n2. Both steps preserve surjectivity.
inline SurjectiveNormalization normalize_surjective(const Circuit& c) {
  SurjectiveNormalization out;
  auto [c1, wires] = add_identity_wires(c, static_cast<std::uint32_t>(circuit_size(c)));
  const std::uint32_t extra = 2 * c1.n - c1.m + 1;
  auto [c2, dangling] = add_dangling_inputs(c1, extra);
  out.c1 = std::move(c1);
  out.c2 = std::move(c2);
  out.wires = wires;
  out.dangling = dangling;
  return out;
}

struct LengthPreservingNormalization {
  Circuit c2;
  PaddingRecord equalization;
  PaddingRecord wires;
};

// Equalize the arities, then add size(C1) identity wires.
inline LengthPreservingNormalization normalize_lengthpreserving(const Circuit& c) {
  LengthPreservingNormalization out;
  auto [c1, eq] = equalize_io(c);
  auto [c2, wires] = add_identity_wires(c1, static_cast<std::uint32_t>(circuit_size(c1)));
  out.c2 = std::move(c2);
  out.equalization = eq;
  out.wires = wires;
  return out;
}

// Maps a semi-inverse of the padded circuit down to a semi-inverse of the
// original. Identity wires are stripped by pinning their block to zeros
// and projecting; dangling inputs and constant outputs just project/pin.
inline FunctionTable transfer_inverse_from_padded(const FunctionTable& padded,
                                                  const PaddingRecord& rec) {
  const std::uint32_t m = rec.original_m;
  const std::uint32_t n = rec.original_n;
  const std::uint32_t k = rec.count;
  FunctionTable out(n, m);
  switch (rec.kind) {
    case PaddingKind::IdentityWires: {
      if (padded.domain_length() != n + k || padded.codomain_length() != m + k)
        throw arity_error("transfer_inverse: padded table arity mismatch");
      for (std::uint64_t y = 0; y < out.domain_span(); ++y) {
        auto v = padded.lookup(y << k);
        if (v) out.set(y, *v >> k);
      }
      return out;
    }
    case PaddingKind::DanglingInputs: {
      if (padded.domain_length() != n || padded.codomain_length() != m + k)
        throw arity_error("transfer_inverse: padded table arity mismatch");
      for (std::uint64_t y = 0; y < out.domain_span(); ++y) {
        auto v = padded.lookup(y);
        if (v) out.set(y, *v >> k);
      }
      return out;
    }
    case PaddingKind::ConstantZeroOutputs: {
      if (padded.domain_length() != n + k || padded.codomain_length() != m)
        throw arity_error("transfer_inverse: padded table arity mismatch");
      for (std::uint64_t y = 0; y < out.domain_span(); ++y) {
        auto v = padded.lookup(y << k);
        if (v) out.set(y, *v);
      }
      return out;
    }
  }
  throw std::logic_error("transfer_inverse: unreachable");
}

// Reverse direction: lifts a semi-inverse of the original circuit to one
// of the padded circuit.
inline FunctionTable transfer_inverse_to_padded(const FunctionTable& inv,
                                                const PaddingRecord& rec) {
  const std::uint32_t m = rec.original_m;
  const std::uint32_t n = rec.original_n;
  const std::uint32_t k = rec.count;
  if (inv.domain_length() != n || inv.codomain_length() != m)
    throw arity_error("transfer_inverse: table arity mismatch");
  switch (rec.kind) {
    case PaddingKind::IdentityWires: {
      FunctionTable out(n + k, m + k);
      for (std::uint64_t y = 0; y < inv.domain_span(); ++y) {
        auto v = inv.lookup(y);
        if (!v) continue;
        for (std::uint64_t u = 0; u < (std::uint64_t{1} << k); ++u)
          out.set((y << k) | u, (*v << k) | u);
      }
      return out;
    }
    case PaddingKind::DanglingInputs: {
      FunctionTable out(n, m + k);
      for (std::uint64_t y = 0; y < inv.domain_span(); ++y) {
        auto v = inv.lookup(y);
        if (v) out.set(y, *v << k);
      }
      return out;
    }
    case PaddingKind::ConstantZeroOutputs: {
      FunctionTable out(n + k, m);
      for (std::uint64_t y = 0; y < inv.domain_span(); ++y) {
        auto v = inv.lookup(y);
        if (v) out.set(y << k, *v);
      }
      return out;
    }
  }
  throw std::logic_error("transfer_inverse: unreachable");
}

// second o first as one circuit: each output of `first` is spliced into
// the matching input of `second`. Cones that end up feeding nothing are
// removed; forks left with a single consumer collapse into plain wires.
inline Circuit compose_circuits(const Circuit& second, const Circuit& first) {
  if (first.n != second.m) throw arity_error("compose_circuits: arity mismatch");

  const std::uint32_t off = static_cast<std::uint32_t>(first.vertices.size());
  std::vector<GateKind> verts;
  verts.reserve(first.vertices.size() + second.vertices.size());
  for (const GateKind& g : first.vertices) verts.push_back(g);
  for (const GateKind& g : second.vertices) verts.push_back(g);
  std::vector<bool> dead_v(verts.size(), false);

  struct WEdge {
    std::uint32_t src, dst;
    bool dead = false;
  };
  std::vector<WEdge> edges;
  for (const Edge& e : first.edges) edges.push_back({e.src, e.dst});
  for (const Edge& e : second.edges) edges.push_back({e.src + off, e.dst + off});

  // Interface vertices and their wiring.
  std::vector<std::uint32_t> driver(first.n + 1, 0);
  for (std::uint32_t v = 0; v < first.vertices.size(); ++v) {
    const GateKind& g = first.vertices[v];
    if (g.op != GateOp::Out) continue;
    dead_v[v] = true;
    for (WEdge& e : edges)
      if (!e.dead && e.dst == v) {
        driver[g.port] = e.src;
        e.dead = true;
      }
  }
  for (std::uint32_t v = 0; v < second.vertices.size(); ++v) {
    const GateKind& g = second.vertices[v];
    if (g.op != GateOp::In) continue;
    dead_v[v + off] = true;
    for (WEdge& e : edges)
      if (!e.dead && e.src == v + off) {
        e.src = driver[g.port];  // splice
      }
  }

  // Dead-cone cleanup.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::uint32_t> outdeg(verts.size(), 0);
    for (const WEdge& e : edges)
      if (!e.dead) ++outdeg[e.src];
    for (std::uint32_t v = 0; v < verts.size(); ++v) {
      if (dead_v[v]) continue;
      const GateOp op = verts[v].op;
      if (op == GateOp::In || op == GateOp::Out) continue;
      if (outdeg[v] == 0) {
        dead_v[v] = true;
        for (WEdge& e : edges)
          if (!e.dead && e.dst == v) e.dead = true;
        changed = true;
      } else if (op == GateOp::Fork && outdeg[v] == 1) {
        std::uint32_t src = 0;
        for (WEdge& e : edges)
          if (!e.dead && e.dst == v) {
            src = e.src;
            e.dead = true;
          }
        for (WEdge& e : edges)
          if (!e.dead && e.src == v) e.src = src;
        dead_v[v] = true;
        changed = true;
      }
    }
  }

  // Compact.
  std::vector<std::uint32_t> remap(verts.size(), 0);
  Circuit out;
  out.m = first.m;
  out.n = second.n;
  for (std::uint32_t v = 0; v < verts.size(); ++v) {
    if (dead_v[v]) continue;
    remap[v] = static_cast<std::uint32_t>(out.vertices.size());
    out.vertices.push_back(verts[v]);
  }
  for (const WEdge& e : edges)
    if (!e.dead) out.edges.push_back({remap[e.src], remap[e.dst]});
  return out;
}

}  // namespace cforge
