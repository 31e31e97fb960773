#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "cforge/circuit.hpp"
#include "cforge/codec.hpp"
#include "cforge/errors.hpp"

namespace cforge {

// Canonical representative under gate-respecting reorderings of the vertex
// sequence. Sorting by gate label fixes everything except ties among the
// four logic gates; those are broken by choosing the relabeling whose
// sorted edge list serializes smallest.
inline Circuit canonical_form(const Circuit& c) {
  const std::uint32_t v_count = static_cast<std::uint32_t>(c.vertices.size());
  std::vector<std::uint32_t> order(v_count);
  for (std::uint32_t v = 0; v < v_count; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return gate_index(c.vertices[a], c.m) < gate_index(c.vertices[b], c.m);
  });

  // order[pos] = old id at new position pos. Group = run of equal labels.
  struct Group {
    std::uint32_t start, len;
  };
  std::vector<Group> groups;
  double perm_budget = 1.0;
  for (std::uint32_t pos = 0; pos < v_count;) {
    std::uint32_t end = pos + 1;
    while (end < v_count &&
           gate_index(c.vertices[order[end]], c.m) == gate_index(c.vertices[order[pos]], c.m))
      ++end;
    if (end - pos > 1) {
      groups.push_back({pos, end - pos});
      for (std::uint32_t k = 2; k <= end - pos; ++k) perm_budget *= k;
    }
    pos = end;
  }
  if (perm_budget > 1.0e7) throw cap_error("canonical_form: too many tied vertices");

  std::vector<std::uint32_t> pos_of(v_count);
  std::vector<Edge> best;
  bool have_best = false;

  auto consider = [&]() {
    for (std::uint32_t p = 0; p < v_count; ++p) pos_of[order[p]] = p;
    std::vector<Edge> mapped;
    mapped.reserve(c.edges.size());
    for (const Edge& e : c.edges) mapped.push_back({pos_of[e.src], pos_of[e.dst]});
    std::sort(mapped.begin(), mapped.end());
    if (!have_best || mapped < best) {
      best = std::move(mapped);
      have_best = true;
    }
  };

  // Odometer over per-group permutations. Within a group all labels are
  // identical, so the vertex section is the same for every candidate and
  // only the edge lists compete.
  std::vector<std::vector<std::uint32_t>> slices;
  for (const Group& g : groups) {
    std::vector<std::uint32_t> ids(order.begin() + g.start, order.begin() + g.start + g.len);
    std::sort(ids.begin(), ids.end());
    slices.push_back(std::move(ids));
  }
  auto rec = [&](auto&& self, std::size_t gi) -> void {
    if (gi == groups.size()) {
      consider();
      return;
    }
    std::vector<std::uint32_t> ids = slices[gi];
    do {
      std::copy(ids.begin(), ids.end(), order.begin() + groups[gi].start);
      self(self, gi + 1);
    } while (std::next_permutation(ids.begin(), ids.end()));
  };
  rec(rec, 0);

  Circuit out;
  out.m = c.m;
  out.n = c.n;
  out.vertices.resize(v_count);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return gate_index(c.vertices[a], c.m) < gate_index(c.vertices[b], c.m);
  });
  for (std::uint32_t p = 0; p < v_count; ++p) out.vertices[p] = c.vertices[order[p]];
  out.edges = best;
  return out;
}

inline BitString canonical_key(const Circuit& c) { return encode(canonical_form(c)); }

namespace detail {

struct CircuitEnumerator {
  std::uint32_t m, n, max_size;
  std::unordered_set<std::string> seen;
  std::vector<Circuit>* out = nullptr;

  struct PendingGate {
    GateOp op;
    std::uint32_t a = 0, b = 0;  // producer vertex ids; b used by And/Or
  };
  std::vector<PendingGate> gates;
  std::vector<std::uint32_t> open;  // open wire slots, as producer ids
  std::uint32_t gate_open = 0;
  std::uint32_t size_now = 0;

  void run() {
    size_now = m;
    open.clear();
    for (std::uint32_t i = 0; i < m; ++i) open.push_back(i);
    recurse();
  }

  std::uint32_t completion_cost(std::uint32_t surplus_gate_wires) const {
    return 2 * n + 3 * (surplus_gate_wires > n ? surplus_gate_wires - n : 0);
  }

  void recurse() {
    try_finish();

    // Distinct producers currently open.
    std::vector<std::uint32_t> uniq = open;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    // Single-input gates.
    for (GateOp op : {GateOp::Not, GateOp::Fork}) {
      const std::uint32_t produced = (op == GateOp::Fork) ? 2u : 1u;
      for (std::uint32_t p : uniq) {
        const std::uint32_t next_gate_open = gate_open - (p >= m ? 1 : 0) + produced;
        if (size_now + 2 + completion_cost(next_gate_open) > max_size) continue;
        apply_gate({op, p, 0}, {p}, produced);
      }
    }
    // Two-input gates over unordered producer pairs.
    for (GateOp op : {GateOp::And, GateOp::Or}) {
      for (std::size_t i = 0; i < uniq.size(); ++i) {
        for (std::size_t j = i; j < uniq.size(); ++j) {
          const std::uint32_t p = uniq[i], q = uniq[j];
          if (p == q && std::count(open.begin(), open.end(), p) < 2) continue;
          std::uint32_t consumed_gate = (p >= m ? 1 : 0) + (q >= m ? 1 : 0);
          const std::uint32_t next_gate_open = gate_open - consumed_gate + 1;
          if (size_now + 3 + completion_cost(next_gate_open) > max_size) continue;
          apply_gate({op, p, q}, {p, q}, 1);
        }
      }
    }
  }

  void apply_gate(PendingGate g, std::initializer_list<std::uint32_t> consumed,
                  std::uint32_t produced) {
    const std::uint32_t cost = 1 + static_cast<std::uint32_t>(consumed.size());
    const std::uint32_t id = m + static_cast<std::uint32_t>(gates.size());
    std::vector<std::uint32_t> saved_open = open;
    const std::uint32_t saved_gate_open = gate_open;

    for (std::uint32_t p : consumed) {
      auto it = std::find(open.begin(), open.end(), p);
      open.erase(it);
      if (p >= m) --gate_open;
    }
    for (std::uint32_t k = 0; k < produced; ++k) open.push_back(id);
    gate_open += produced;
    size_now += cost;
    gates.push_back(g);

    recurse();

    gates.pop_back();
    size_now -= cost;
    gate_open = saved_gate_open;
    open = std::move(saved_open);
  }

  void try_finish() {
    if (gate_open > n) return;
    if (size_now + 2 * n > max_size) return;
    const std::uint32_t need_ins = n - gate_open;

    std::vector<std::uint32_t> gate_wires, in_wires;
    for (std::uint32_t p : open)
      (p >= m ? gate_wires : in_wires).push_back(p);
    if (in_wires.size() < need_ins) return;
    std::sort(in_wires.begin(), in_wires.end());

    // Choose which input wires reach outputs; the rest dangle.
    std::vector<std::uint32_t> pick(need_ins);
    choose_ins(in_wires, 0, 0, pick, gate_wires);
  }

  void choose_ins(const std::vector<std::uint32_t>& in_wires, std::size_t from,
                  std::size_t chosen, std::vector<std::uint32_t>& pick,
                  const std::vector<std::uint32_t>& gate_wires) {
    if (chosen == pick.size()) {
      emit(gate_wires, pick);
      return;
    }
    for (std::size_t i = from; i + (pick.size() - chosen) <= in_wires.size(); ++i) {
      pick[chosen] = in_wires[i];
      choose_ins(in_wires, i + 1, chosen + 1, pick, gate_wires);
    }
  }

  void emit(const std::vector<std::uint32_t>& gate_wires,
            const std::vector<std::uint32_t>& picked_ins) {
    std::vector<std::uint32_t> drivers = gate_wires;
    drivers.insert(drivers.end(), picked_ins.begin(), picked_ins.end());
    std::sort(drivers.begin(), drivers.end());
    do {
      Circuit c;
      c.m = m;
      c.n = n;
      for (std::uint32_t i = 1; i <= m; ++i) c.vertices.push_back(gate_in(i));
      for (const PendingGate& g : gates) {
        const std::uint32_t id = static_cast<std::uint32_t>(c.vertices.size());
        switch (g.op) {
          case GateOp::Not: c.vertices.push_back(gate_not()); break;
          case GateOp::Fork: c.vertices.push_back(gate_fork()); break;
          case GateOp::And: c.vertices.push_back(gate_and()); break;
          case GateOp::Or: c.vertices.push_back(gate_or()); break;
          default: break;
        }
        c.edges.push_back({g.a, id});
        if (g.op == GateOp::And || g.op == GateOp::Or) c.edges.push_back({g.b, id});
      }
      for (std::uint32_t j = 1; j <= n; ++j) {
        const std::uint32_t id = static_cast<std::uint32_t>(c.vertices.size());
        c.vertices.push_back(gate_out(j));
        c.edges.push_back({drivers[j - 1], id});
      }
      Circuit canon = canonical_form(c);
      std::string key = encode(canon).str();
      if (seen.insert(std::move(key)).second) out->push_back(std::move(canon));
    } while (std::next_permutation(drivers.begin(), drivers.end()));
  }
};

}  // namespace detail

// Every valid circuit with the given arities and size at most max_size,
// one representative per canonical class, ordered by size then canonical
// code. Internal gate ids are assigned in construction order, so the same
// circuit can be reached several times; the canonical key deduplicates.
inline std::vector<Circuit> enumerate_circuits(std::uint32_t m, std::uint32_t n,
                                               std::uint32_t max_size) {
  if (m < 1 || n < 1) throw std::invalid_argument("enumerate_circuits: need m, n >= 1");
  if (m > 6 || n > 6 || max_size > 40)
    throw cap_error("enumerate_circuits: beyond the safety cap");
  std::vector<Circuit> result;
  detail::CircuitEnumerator gen;
  gen.m = m;
  gen.n = n;
  gen.max_size = max_size;
  gen.out = &result;
  gen.run();
  std::sort(result.begin(), result.end(), [](const Circuit& a, const Circuit& b) {
    const std::size_t sa = circuit_size(a), sb = circuit_size(b);
    if (sa != sb) return sa < sb;
    return encode(a).str() < encode(b).str();
  });
  return result;
}

}  // namespace cforge
