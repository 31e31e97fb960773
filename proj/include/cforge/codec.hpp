#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cforge/bitstring.hpp"
#include "cforge/circuit.hpp"
#include "cforge/errors.hpp"
#include "cforge/evaluate.hpp"

namespace cforge {

inline std::uint32_t ceil_log2(std::uint64_t x) {
  std::uint32_t w = 0;
  while ((std::uint64_t{1} << w) < x) ++w;
  return w;
}

// Four-letter working alphabet; the bit image is a,b,c,d -> 00,01,10,11.
// Vertex ids are written over {a,b}, gate labels and edge separators over
// {c,d}, so the two alternate and no extra separators are needed.
struct QuaternaryString {
  std::vector<std::uint8_t> symbols;  // values 0..3

  std::string str() const {
    std::string s;
    s.reserve(symbols.size());
    for (auto v : symbols) s.push_back("abcd"[v]);
    return s;
  }

  BitString to_bits() const {
    BitString b;
    for (auto v : symbols) {
      b.push_back((v >> 1) & 1u);
      b.push_back(v & 1u);
    }
    return b;
  }

  static std::optional<QuaternaryString> from_bits(const BitString& bits) {
    if (bits.size() % 2 != 0) return std::nullopt;
    QuaternaryString q;
    q.symbols.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2)
      q.symbols.push_back(static_cast<std::uint8_t>((bits[i] << 1) | bits[i + 1]));
    return q;
  }
};

namespace detail {

inline void append_ab_number(QuaternaryString& q, std::uint64_t value, std::uint32_t width) {
  for (std::uint32_t k = 0; k < width; ++k)
    q.symbols.push_back(static_cast<std::uint8_t>((value >> (width - 1 - k)) & 1u));
}

inline void append_cd_number(QuaternaryString& q, std::uint64_t value, std::uint32_t width) {
  for (std::uint32_t k = 0; k < width; ++k)
    q.symbols.push_back(static_cast<std::uint8_t>(2u + ((value >> (width - 1 - k)) & 1u)));
}

}  // namespace detail

// Vertex section: per vertex, its position in {a,b} then its gate label in
// {c,d}. Edge section: per edge, src, letter c, dst, letter d.
inline QuaternaryString encode_quaternary(const Circuit& c) {
  const std::uint64_t v_count = c.vertices.size();
  const std::uint32_t wv = ceil_log2(v_count);
  const std::uint32_t wg = ceil_log2(4 + c.m + c.n);
  QuaternaryString q;
  q.symbols.reserve(v_count * (wv + wg) + c.edges.size() * (2 + 2 * wv));
  for (std::uint64_t v = 0; v < v_count; ++v) {
    detail::append_ab_number(q, v, wv);
    detail::append_cd_number(q, gate_index(c.vertices[v], c.m), wg);
  }
  for (const Edge& e : c.edges) {
    detail::append_ab_number(q, e.src, wv);
    q.symbols.push_back(2);  // c
    detail::append_ab_number(q, e.dst, wv);
    q.symbols.push_back(3);  // d
  }
  return q;
}

inline BitString encode(const Circuit& c) { return encode_quaternary(c).to_bits(); }

// Parses the strict layout back. The id width is read off the leading
// {a,b} run, the vertex section must list ids 0,1,2,... in order, and the
// section switch happens at the first entry that does not continue that
// pattern. The final word on validity is re-encoding.
inline std::optional<Circuit> strict_decode(const BitString& bits) {
  auto maybe_q = QuaternaryString::from_bits(bits);
  if (!maybe_q) return std::nullopt;
  const std::vector<std::uint8_t>& s = maybe_q->symbols;
  const std::size_t len = s.size();
  if (len == 0) return std::nullopt;

  auto ab_run = [&](std::size_t from) {
    std::size_t r = from;
    while (r < len && s[r] < 2) ++r;
    return r - from;
  };
  auto cd_run = [&](std::size_t from) {
    std::size_t r = from;
    while (r < len && s[r] >= 2) ++r;
    return r - from;
  };
  auto read_ab = [&](std::size_t from, std::size_t width) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < width; ++k) v = (v << 1) | s[from + k];
    return v;
  };
  auto read_cd = [&](std::size_t from, std::size_t width) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < width; ++k) v = (v << 1) | (s[from + k] - 2u);
    return v;
  };

  const std::size_t wv = ab_run(0);
  if (wv == 0 || wv > 32) return std::nullopt;
  if (read_ab(0, wv) != 0) return std::nullopt;  // first id must be 0
  const std::size_t wg = cd_run(wv);
  if (wg == 0 || wg > 32) return std::nullopt;
  if (wv + wg > len) return std::nullopt;

  std::vector<std::uint64_t> gate_codes;
  gate_codes.push_back(read_cd(wv, wg));
  std::size_t pos = wv + wg;

  while (pos < len) {
    if (ab_run(pos) < wv) return std::nullopt;
    const std::uint64_t id = read_ab(pos, wv);
    if (id == gate_codes.size() && cd_run(pos + wv) == wg && pos + wv + wg <= len) {
      gate_codes.push_back(read_cd(pos + wv, wg));
      pos += wv + wg;
      continue;
    }
    break;  // edge section starts here
  }

  const std::uint64_t v_count = gate_codes.size();
  std::vector<Edge> edges;
  while (pos < len) {
    if (ab_run(pos) < wv) return std::nullopt;
    const std::uint64_t src = read_ab(pos, wv);
    pos += wv;
    if (pos >= len || s[pos] != 2) return std::nullopt;  // expect c
    ++pos;
    if (ab_run(pos) < wv) return std::nullopt;
    const std::uint64_t dst = read_ab(pos, wv);
    pos += wv;
    if (pos >= len || s[pos] != 3) return std::nullopt;  // expect d
    ++pos;
    if (src >= v_count || dst >= v_count) return std::nullopt;
    edges.push_back({static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(dst)});
  }

  // Recover m and n: labels above the four logic gates must cover a
  // contiguous range, inputs first (they are the in-degree-0 ones).
  std::uint64_t max_code = 0;
  for (std::uint64_t g : gate_codes) max_code = std::max(max_code, g);
  if (max_code < 4 || max_code > 4 + 4096) return std::nullopt;
  std::vector<std::uint32_t> owner(max_code + 1, UINT32_MAX);
  for (std::uint32_t v = 0; v < v_count; ++v) {
    const std::uint64_t g = gate_codes[v];
    if (g >= 4) {
      if (owner[g] != UINT32_MAX) return std::nullopt;  // label repeated
      owner[g] = v;
    }
  }
  for (std::uint64_t g = 4; g <= max_code; ++g)
    if (owner[g] == UINT32_MAX) return std::nullopt;  // label gap

  std::vector<std::uint32_t> indeg(v_count, 0);
  for (const Edge& e : edges) ++indeg[e.dst];
  std::uint32_t m = 0;
  while (4 + m <= max_code && indeg[owner[4 + m]] == 0) ++m;
  const std::uint64_t label_count = max_code - 3;
  if (m == 0 || m > label_count) return std::nullopt;
  const std::uint32_t n = static_cast<std::uint32_t>(label_count - m);
  if (n == 0) return std::nullopt;

  Circuit c;
  c.m = m;
  c.n = n;
  for (std::uint64_t g : gate_codes) {
    if (g == 0) c.vertices.push_back(gate_and());
    else if (g == 1) c.vertices.push_back(gate_or());
    else if (g == 2) c.vertices.push_back(gate_not());
    else if (g == 3) c.vertices.push_back(gate_fork());
    else if (g <= 3 + m) c.vertices.push_back(gate_in(static_cast<std::uint32_t>(g - 3)));
    else c.vertices.push_back(gate_out(static_cast<std::uint32_t>(g - 3 - m)));
  }
  c.edges = std::move(edges);

  if (!validate(c).ok()) return std::nullopt;
  if (encode(c) != bits) return std::nullopt;
  return c;
}

inline bool is_code(const BitString& bits) { return strict_decode(bits).has_value(); }

inline std::uint64_t identity_code_length(std::uint32_t m) {
  const std::uint64_t v_count = 2ull * m;
  const std::uint64_t wv = ceil_log2(v_count);
  const std::uint64_t wg = ceil_log2(4 + 2ull * m);
  return 2 * (v_count * (wv + wg) + m * (2 + 2 * wv));
}

struct DecodeReport {
  bool strict = false;
  bool fallback_below_minimum = false;
  std::uint32_t fallback_m = 0;
};

// Total: genuine codes decode exactly; anything else falls back to the
// largest identity circuit whose code still fits in |c| bits, and to
// identity_circuit(1) when not even that fits.
inline Circuit decode(const BitString& bits, DecodeReport* report = nullptr) {
  if (auto c = strict_decode(bits)) {
    if (report) *report = {true, false, 0};
    return *c;
  }
  std::uint32_t m = 1;
  while (identity_code_length(m + 1) <= bits.size()) ++m;
  DecodeReport r;
  r.strict = false;
  r.fallback_below_minimum = identity_code_length(1) > bits.size();
  r.fallback_m = m;
  if (report) *report = r;
  return identity_circuit(m);
}

// Universal evaluation: ev(code(C), x) = C(x) when |x| matches the decoded
// arity; otherwise the input passes through.
inline BitString ev(const BitString& code, const BitString& x) {
  Circuit c = decode(code);
  if (x.size() != c.m) return x;
  return evaluate(c, x);
}

// .ccode container: 32-bit big-endian bit count, then the bits packed
// big-endian and zero-padded to a byte boundary.
inline void write_ccode(std::ostream& out, const BitString& bits) {
  const std::uint32_t len = static_cast<std::uint32_t>(bits.size());
  for (int shift = 24; shift >= 0; shift -= 8)
    out.put(static_cast<char>((len >> shift) & 0xFF));
  std::uint8_t acc = 0;
  int filled = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    acc = static_cast<std::uint8_t>((acc << 1) | bits[i]);
    if (++filled == 8) {
      out.put(static_cast<char>(acc));
      acc = 0;
      filled = 0;
    }
  }
  if (filled > 0) out.put(static_cast<char>(acc << (8 - filled)));
}

inline BitString read_ccode(std::istream& in) {
  std::uint32_t len = 0;
  for (int k = 0; k < 4; ++k) {
    int ch = in.get();
    if (ch == EOF) throw parse_error("ccode: truncated header", static_cast<std::size_t>(k));
    len = (len << 8) | static_cast<std::uint32_t>(ch & 0xFF);
  }
  BitString bits;
  std::uint32_t got = 0;
  while (got < len) {
    int ch = in.get();
    if (ch == EOF) throw parse_error("ccode: truncated payload", got);
    for (int bit = 7; bit >= 0 && got < len; --bit, ++got)
      bits.push_back(((ch >> bit) & 1) != 0);
  }
  return bits;
}

}  // namespace cforge
