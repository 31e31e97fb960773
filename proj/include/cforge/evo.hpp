#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cforge/bitstring.hpp"
#include "cforge/circuit.hpp"
#include "cforge/codec.hpp"
#include "cforge/errors.hpp"
#include "cforge/evaluate.hpp"
#include "cforge/netlist.hpp"

namespace cforge {

// (c, x) -> (c, [decode(c)](x)); the first component rides along.
inline std::pair<BitString, BitString> ev_circ(const BitString& code, const BitString& x) {
  return {code, ev(code, x)};
}

// Length-preserving universal evaluation: the evaluation branch fires only
// for genuine codes of length-preserving circuits whose code is short,
// |c| <= 12 m log2(2m); every other pair passes through unchanged.
inline std::pair<BitString, BitString> ev_o(const BitString& code, const BitString& x) {
  if (auto c = strict_decode(code)) {
    const double bound = 12.0 * c->m * std::log2(2.0 * c->m);
    if (c->m == c->n && x.size() == c->m && static_cast<double>(code.size()) <= bound)
      return {code, evaluate(*c, x)};
  }
  return {code, x};
}

// Pins the first |prefix| inputs of E to fixed bits, producing a circuit
// computing x -> E(prefix . x). Constant bits are built out of the first
// surviving input: forks plus x & !x for 0, x | !x for 1. At least one
// input must survive; only input vertices can source a value in this gate
// model, so a zero-input circuit cannot carry outputs.
inline Circuit hardwire(const Circuit& e, const BitString& prefix) {
  const std::uint32_t k = static_cast<std::uint32_t>(prefix.size());
  if (k > e.m) throw arity_error("hardwire: prefix longer than the input arity");
  if (k == 0) return e;
  if (k == e.m)
    throw validation_error(
        "hardwire: pinning every input would need a zero-input circuit, "
        "which cannot drive any output here; leave at least one input free");

  std::vector<std::uint32_t> in_vertex(e.m + 1, 0);
  for (std::uint32_t v = 0; v < e.vertices.size(); ++v)
    if (e.vertices[v].op == GateOp::In) in_vertex[e.vertices[v].port] = v;

  // Consumers of pinned inputs, in pin order; values they must receive.
  struct Pin {
    std::uint32_t consumer;
    bool value;
  };
  std::vector<Pin> pins;
  std::vector<bool> drop_edge(e.edges.size(), false);
  std::vector<bool> drop_vertex(e.vertices.size(), false);
  for (std::uint32_t i = 1; i <= k; ++i) {
    const std::uint32_t v = in_vertex[i];
    drop_vertex[v] = true;
    for (std::size_t idx = 0; idx < e.edges.size(); ++idx)
      if (e.edges[idx].src == v) {
        drop_edge[idx] = true;
        pins.push_back({e.edges[idx].dst, prefix[i - 1] != 0});
      }
  }

  std::uint32_t zero_uses = 0, one_uses = 0;
  for (const Pin& p : pins) (p.value ? one_uses : zero_uses)++;

  // Assemble: surviving vertices keep their order; gadget gates follow.
  Circuit r;
  r.m = e.m - k;
  r.n = e.n;
  std::vector<std::uint32_t> remap(e.vertices.size(), 0);
  for (std::uint32_t v = 0; v < e.vertices.size(); ++v) {
    if (drop_vertex[v]) continue;
    remap[v] = static_cast<std::uint32_t>(r.vertices.size());
    GateKind g = e.vertices[v];
    if (g.op == GateOp::In) g.port -= k;
    r.vertices.push_back(g);
  }
  for (std::size_t idx = 0; idx < e.edges.size(); ++idx) {
    if (drop_edge[idx]) continue;
    r.edges.push_back({remap[e.edges[idx].src], remap[e.edges[idx].dst]});
  }

  if (pins.empty()) return r;  // every pinned input was dangling

  auto add_gate = [&](GateKind g) {
    r.vertices.push_back(g);
    return static_cast<std::uint32_t>(r.vertices.size() - 1);
  };

  // Tap the new first input. Fork out enough copies for the gadgets plus
  // its original consumer, if it had one.
  const std::uint32_t tap = remap[in_vertex[k + 1]];
  std::size_t tap_edge_idx = r.edges.size();
  for (std::size_t idx = 0; idx < r.edges.size(); ++idx)
    if (r.edges[idx].src == tap) {
      tap_edge_idx = idx;
      break;
    }
  const bool tap_used = tap_edge_idx < r.edges.size();
  const std::uint32_t copies = (tap_used ? 1 : 0) + (zero_uses ? 2 : 0) + (one_uses ? 2 : 0);

  std::vector<std::uint32_t> taps;
  std::uint32_t original_target = 0;
  if (tap_used) {
    original_target = r.edges[tap_edge_idx].dst;
    r.edges.erase(r.edges.begin() + static_cast<std::ptrdiff_t>(tap_edge_idx));
  }
  std::uint32_t prev = tap;
  for (std::uint32_t f = 1; f < copies; ++f) {
    std::uint32_t fork = add_gate(gate_fork());
    r.edges.push_back({prev, fork});
    taps.push_back(fork);
    prev = fork;
  }
  taps.push_back(prev);  // last fork hands out two wires
  if (tap_used) {
    // First copy restores the original consumer.
    r.edges.push_back({taps.front(), original_target});
    taps.erase(taps.begin());
  }

  std::size_t next_tap = 0;
  auto make_const = [&](bool value) {
    const std::uint32_t a = taps[next_tap++];
    const std::uint32_t b = taps[next_tap++];
    const std::uint32_t neg = add_gate(gate_not());
    r.edges.push_back({b, neg});
    const std::uint32_t g = add_gate(value ? gate_or() : gate_and());
    r.edges.push_back({a, g});
    r.edges.push_back({neg, g});
    return g;
  };

  std::uint32_t zero_src = zero_uses ? make_const(false) : 0;
  std::uint32_t one_src = one_uses ? make_const(true) : 0;

  // Distribute each constant over its consumers through a fork chain.
  auto distribute = [&](std::uint32_t src, bool value, std::uint32_t uses) {
    if (uses == 0) return;
    std::vector<std::uint32_t> wires;
    std::uint32_t prev = src;
    for (std::uint32_t f = 1; f < uses; ++f) {
      std::uint32_t fork = add_gate(gate_fork());
      r.edges.push_back({prev, fork});
      wires.push_back(fork);
      prev = fork;
    }
    wires.push_back(prev);
    std::size_t w = 0;
    for (const Pin& p : pins) {
      if (p.value != value) continue;
      std::uint32_t wire = (w + 1 < wires.size()) ? wires[w] : wires.back();
      r.edges.push_back({wire, remap[p.consumer]});
      ++w;
    }
  };
  distribute(zero_src, false, zero_uses);
  distribute(one_src, true, one_uses);

  return r;
}

struct FamilyMember {
  Circuit circuit;
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::uint64_t size = 0;
};

struct InterleavedFamily {
  std::vector<FamilyMember> members;
  bool validated = false;
};

// Checks every family invariant and names the first one that fails:
// member k must be surjective with 2n < m <= |C| < 6n, and consecutive
// members must grow (size, n by more than 1, m by more than a factor 2),
// which also forces m_{k+1} - m_k > n_{k+1} - n_k > 1.
inline InterleavedFamily interleave_family(const std::vector<Circuit>& circuits,
                                           std::size_t cap = brute_force_cap()) {
  if (circuits.empty()) throw family_error("family: no members");
  InterleavedFamily fam;
  for (std::size_t k = 0; k < circuits.size(); ++k) {
    const Circuit& c = circuits[k];
    const std::string at = "member " + std::to_string(k + 1);
    require_valid(c);
    const std::uint64_t size = circuit_size(c);
    if (!(2ull * c.n < c.m))
      throw family_error(at + ": needs 2n < m, got n=" + std::to_string(c.n) +
                         " m=" + std::to_string(c.m));
    if (!(c.m <= size))
      throw family_error(at + ": needs m <= size");
    if (!(size < 6ull * c.n))
      throw family_error(at + ": needs size < 6n, got size=" + std::to_string(size) +
                         " n=" + std::to_string(c.n));
    if (!is_surjective(c, cap)) throw family_error(at + ": not surjective");
    fam.members.push_back({c, c.m, c.n, size});
  }
  for (std::size_t k = 0; k + 1 < fam.members.size(); ++k) {
    const FamilyMember& a = fam.members[k];
    const FamilyMember& b = fam.members[k + 1];
    const std::string at = "members " + std::to_string(k + 1) + "/" + std::to_string(k + 2);
    if (!(b.size > a.size)) throw family_error(at + ": sizes must increase");
    if (!(b.n > 1 + a.n)) throw family_error(at + ": needs n_{k+1} > 1 + n_k");
    if (!(b.m > 2 * a.m)) throw family_error(at + ": needs m_{k+1} > 2 m_k");
    if (!(b.m - a.m > b.n - a.n) || !(b.n - a.n > 1))
      throw family_error(at + ": growth claim m_{k+1}-m_k > n_{k+1}-n_k > 1 failed");
  }
  fam.validated = true;
  return fam;
}

// Interleaved evaluation. Lengths equal to some m_k run the member
// circuit; lengths strictly between m_k and m_{k+1} project, first onto
// n_k + i bits and past the balance point onto n_{k+1} - 1 bits. Inputs
// shorter than m_1 or longer than m_K map to themselves.
inline BitString eval_interleaved(const InterleavedFamily& fam, const BitString& x) {
  if (!fam.validated) throw family_error("family: not validated");
  const std::size_t len = x.size();
  if (len < fam.members.front().m) return x;
  for (const FamilyMember& mem : fam.members)
    if (len == mem.m) return evaluate(mem.circuit, x);
  for (std::size_t k = 0; k + 1 < fam.members.size(); ++k) {
    const FamilyMember& a = fam.members[k];
    const FamilyMember& b = fam.members[k + 1];
    if (len <= a.m || len >= b.m) continue;
    const std::size_t i = len - a.m;
    const std::size_t d = b.n - a.n;
    if (i < d) return x.prefix(a.n + i);
    return x.prefix(b.n - 1);
  }
  return x;  // beyond the last member
}

// Manifest: '<path> <m> <n> <size>' per line, order significant, comments
// start with '#'. Paths resolve relative to the manifest location.
inline InterleavedFamily load_family_manifest(const std::filesystem::path& manifest,
                                              std::size_t cap = brute_force_cap()) {
  std::ifstream in(manifest);
  if (!in) throw family_error("family: cannot open manifest " + manifest.string());
  std::vector<Circuit> circuits;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string path;
    if (!(ls >> path)) continue;
    std::uint32_t m, n;
    std::uint64_t size;
    if (!(ls >> m >> n >> size))
      throw family_error("family manifest line " + std::to_string(line_no) + ": bad record");
    std::filesystem::path file = manifest.parent_path() / path;
    std::ifstream cin(file);
    if (!cin) throw family_error("family: cannot open member " + file.string());
    Circuit c = parse_netlist(cin);
    if (c.m != m || c.n != n || circuit_size(c) != size)
      throw family_error("family manifest line " + std::to_string(line_no) +
                         ": recorded arity/size does not match " + path);
    circuits.push_back(std::move(c));
  }
  return interleave_family(circuits, cap);
}

inline void save_family_manifest(const std::filesystem::path& manifest,
                                 const InterleavedFamily& fam, const std::string& stem) {
  std::ofstream out(manifest);
  for (std::size_t k = 0; k < fam.members.size(); ++k) {
    const FamilyMember& mem = fam.members[k];
    const std::string name = stem + "_" + std::to_string(k + 1) + ".circ";
    std::ofstream circ(manifest.parent_path() / name);
    circ << to_netlist(mem.circuit);
    out << name << " " << mem.m << " " << mem.n << " " << mem.size << "\n";
  }
}

}  // namespace cforge
