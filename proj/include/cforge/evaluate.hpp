#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "cforge/bitstring.hpp"
#include "cforge/circuit.hpp"
#include "cforge/errors.hpp"
#include "cforge/function_table.hpp"

namespace cforge {

// Stable Kahn order: among ready vertices the smallest id goes first, so
// every caller sees the same order for the same circuit.
inline std::vector<std::uint32_t> topological_order(const Circuit& c) {
  const std::size_t v_count = c.vertices.size();
  std::vector<std::uint32_t> deg = in_degrees(c);
  std::vector<std::vector<std::uint32_t>> succ(v_count);
  for (const Edge& e : c.edges) succ[e.src].push_back(e.dst);

  std::vector<bool> done(v_count, false);
  std::vector<std::uint32_t> order;
  order.reserve(v_count);
  // Selection by repeated scan; circuits here are small.
  for (std::size_t step = 0; step < v_count; ++step) {
    std::uint32_t pick = static_cast<std::uint32_t>(v_count);
    for (std::uint32_t v = 0; v < v_count; ++v)
      if (!done[v] && deg[v] == 0) {
        pick = v;
        break;
      }
    if (pick == v_count) throw validation_error("topological_order: cycle");
    done[pick] = true;
    order.push_back(pick);
    for (std::uint32_t w : succ[pick]) --deg[w];
  }
  return order;
}

namespace detail {

struct EvalPlan {
  std::vector<std::uint32_t> order;
  std::vector<std::vector<std::uint32_t>> in_srcs;  // per vertex, sources in edge order
  std::vector<std::uint32_t> out_src;               // per output port 1..n (index 0 unused)

  explicit EvalPlan(const Circuit& c) {
    order = topological_order(c);
    in_srcs.assign(c.vertices.size(), {});
    for (const Edge& e : c.edges) in_srcs[e.dst].push_back(e.src);
    out_src.assign(c.n + 1, 0);
    for (std::uint32_t v = 0; v < c.vertices.size(); ++v)
      if (c.vertices[v].op == GateOp::Out) out_src[c.vertices[v].port] = in_srcs[v].at(0);
  }
};

// Word where bit p equals bit `significance` of p, for 64 consecutive
// input indices starting at block*64.
inline std::uint64_t input_word(std::uint32_t significance, std::uint64_t block) {
  static constexpr std::array<std::uint64_t, 6> kMasks = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  if (significance < 6) return kMasks[significance];
  return ((block >> (significance - 6)) & 1u) ? ~0ull : 0ull;
}

}  // namespace detail

inline BitString evaluate(const Circuit& c, const BitString& x) {
  if (x.size() != c.m) throw arity_error("evaluate: arity");
  detail::EvalPlan plan(c);
  std::vector<std::uint8_t> value(c.vertices.size(), 0);
  for (std::uint32_t v : plan.order) {
    const GateKind& g = c.vertices[v];
    const auto& src = plan.in_srcs[v];
    switch (g.op) {
      case GateOp::In: value[v] = x[g.port - 1]; break;
      case GateOp::Not: value[v] = value[src[0]] ^ 1u; break;
      case GateOp::Fork: value[v] = value[src[0]]; break;
      case GateOp::And: value[v] = value[src[0]] & value[src[1]]; break;
      case GateOp::Or: value[v] = value[src[0]] | value[src[1]]; break;
      case GateOp::Out: value[v] = value[src[0]]; break;
    }
  }
  BitString y = BitString::zeros(c.n);
  for (std::uint32_t j = 1; j <= c.n; ++j) y.set(j - 1, value[plan.out_src[j]] != 0);
  return y;
}

// Outputs over the whole domain, packed as integers. m and n are capped.
class TruthTable {
public:
  TruthTable(std::uint32_t m, std::uint32_t n) : m_(m), n_(n) {
    out_.assign(std::size_t{1} << m, 0);
  }

  std::uint32_t domain_length() const { return m_; }
  std::uint32_t codomain_length() const { return n_; }
  std::size_t domain_span() const { return out_.size(); }

  std::uint64_t operator[](std::uint64_t x) const { return out_[x]; }
  std::uint64_t& slot(std::uint64_t x) { return out_[x]; }

private:
  std::uint32_t m_;
  std::uint32_t n_;
  std::vector<std::uint64_t> out_;
};

inline TruthTable circuit_truth_table(const Circuit& c, std::size_t cap = brute_force_cap()) {
  if (c.m > cap) throw cap_error("too-large: circuit has " + std::to_string(c.m) +
                                 " inputs, cap is " + std::to_string(cap));
  if (c.n > 62) throw cap_error("too-large: output arity");
  detail::EvalPlan plan(c);
  TruthTable table(c.m, c.n);
  const std::uint64_t total = std::uint64_t{1} << c.m;
  const std::uint64_t blocks = (total + 63) / 64;
  std::vector<std::uint64_t> word(c.vertices.size(), 0);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    for (std::uint32_t v : plan.order) {
      const GateKind& g = c.vertices[v];
      const auto& src = plan.in_srcs[v];
      switch (g.op) {
        case GateOp::In: word[v] = detail::input_word(c.m - g.port, b); break;
        case GateOp::Not: word[v] = ~word[src[0]]; break;
        case GateOp::Fork: word[v] = word[src[0]]; break;
        case GateOp::And: word[v] = word[src[0]] & word[src[1]]; break;
        case GateOp::Or: word[v] = word[src[0]] | word[src[1]]; break;
        case GateOp::Out: word[v] = word[src[0]]; break;
      }
    }
    const std::uint64_t lo = b * 64;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + 64, total);
    for (std::uint64_t x = lo; x < hi; ++x) {
      std::uint64_t y = 0;
      const std::uint32_t p = static_cast<std::uint32_t>(x - lo);
      for (std::uint32_t j = 1; j <= c.n; ++j)
        y |= ((word[plan.out_src[j]] >> p) & 1u) << (c.n - j);
      table.slot(x) = y;
    }
  }
  return table;
}

// Materializes C(.) as a total table with 2^m entries.
inline FunctionTable function_table(const Circuit& c, std::size_t cap = brute_force_cap()) {
  TruthTable tt = circuit_truth_table(c, cap);
  FunctionTable f(c.m, c.n);
  for (std::uint64_t x = 0; x < tt.domain_span(); ++x) f.set(x, tt[x]);
  return f;
}

inline std::set<BitString> image(const Circuit& c, std::size_t cap = brute_force_cap()) {
  TruthTable tt = circuit_truth_table(c, cap);
  std::set<BitString> im;
  for (std::uint64_t x = 0; x < tt.domain_span(); ++x)
    im.insert(BitString::from_index(tt[x], c.n));
  return im;
}

inline bool is_injective(const Circuit& c, std::size_t cap = brute_force_cap()) {
  TruthTable tt = circuit_truth_table(c, cap);
  std::vector<std::uint64_t> ys;
  ys.reserve(tt.domain_span());
  for (std::uint64_t x = 0; x < tt.domain_span(); ++x) ys.push_back(tt[x]);
  std::sort(ys.begin(), ys.end());
  return std::adjacent_find(ys.begin(), ys.end()) == ys.end();
}

inline bool is_surjective(const Circuit& c, std::size_t cap = brute_force_cap()) {
  if (c.n > cap) throw cap_error("too-large: output arity " + std::to_string(c.n) +
                                 " exceeds cap " + std::to_string(cap));
  TruthTable tt = circuit_truth_table(c, cap);
  std::vector<bool> seen(std::size_t{1} << c.n, false);
  std::size_t hits = 0;
  for (std::uint64_t x = 0; x < tt.domain_span(); ++x) {
    if (!seen[tt[x]]) {
      seen[tt[x]] = true;
      if (++hits == seen.size()) return true;
    }
  }
  return hits == seen.size();
}

inline bool is_identity(const Circuit& c, std::size_t cap = brute_force_cap()) {
  if (c.m != c.n) return false;
  TruthTable tt = circuit_truth_table(c, cap);
  for (std::uint64_t x = 0; x < tt.domain_span(); ++x)
    if (tt[x] != x) return false;
  return true;
}

}  // namespace cforge
