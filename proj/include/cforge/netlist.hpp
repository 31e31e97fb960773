#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cforge/circuit.hpp"
#include "cforge/errors.hpp"

namespace cforge {

// Textual netlist, one item per line:
//   circuit <m> <n>
//   v <id> <gate>      gates: and | or | not | fork | in<i> | out<j>
//   e <src> <dst>
// Vertex sequence order is the file order; ids are names local to the file.
// Comments start with '#'.

inline std::string to_netlist(const Circuit& c) {
  std::ostringstream out;
  out << "circuit " << c.m << " " << c.n << "\n";
  for (std::size_t v = 0; v < c.vertices.size(); ++v)
    out << "v " << v << " " << gate_name(c.vertices[v]) << "\n";
  for (const Edge& e : c.edges) out << "e " << e.src << " " << e.dst << "\n";
  return out.str();
}

namespace detail {

inline GateKind parse_gate_token(const std::string& tok, std::size_t line_no) {
  if (tok == "and") return gate_and();
  if (tok == "or") return gate_or();
  if (tok == "not") return gate_not();
  if (tok == "fork") return gate_fork();
  auto tail_number = [&](std::size_t off) -> std::uint32_t {
    if (tok.size() == off) throw parse_error("netlist: missing port number in '" + tok + "'", line_no);
    std::uint32_t v = 0;
    for (std::size_t i = off; i < tok.size(); ++i) {
      if (tok[i] < '0' || tok[i] > '9')
        throw parse_error("netlist: bad gate '" + tok + "'", line_no);
      v = v * 10 + static_cast<std::uint32_t>(tok[i] - '0');
    }
    return v;
  };
  if (tok.rfind("in", 0) == 0) return gate_in(tail_number(2));
  if (tok.rfind("out", 0) == 0) return gate_out(tail_number(3));
  throw parse_error("netlist: unknown gate '" + tok + "'", line_no);
}

}  // namespace detail

inline Circuit parse_netlist(std::istream& in, bool check_valid = true) {
  Circuit c;
  bool header_seen = false;
  std::map<std::uint64_t, std::uint32_t> id_map;  // file id -> sequence position
  struct RawEdge {
    std::uint64_t src, dst;
    std::size_t line;
  };
  std::vector<RawEdge> raw_edges;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "circuit") {
      if (header_seen) throw parse_error("netlist: duplicate header", line_no);
      if (!(ls >> c.m >> c.n)) throw parse_error("netlist: bad header", line_no);
      header_seen = true;
    } else if (head == "v") {
      if (!header_seen) throw parse_error("netlist: vertex before header", line_no);
      std::uint64_t id;
      std::string gate;
      if (!(ls >> id >> gate)) throw parse_error("netlist: bad vertex line", line_no);
      if (id_map.count(id)) throw parse_error("netlist: duplicate vertex id", line_no);
      id_map[id] = static_cast<std::uint32_t>(c.vertices.size());
      c.vertices.push_back(detail::parse_gate_token(gate, line_no));
    } else if (head == "e") {
      if (!header_seen) throw parse_error("netlist: edge before header", line_no);
      std::uint64_t s, d;
      if (!(ls >> s >> d)) throw parse_error("netlist: bad edge line", line_no);
      raw_edges.push_back({s, d, line_no});
    } else {
      throw parse_error("netlist: unknown directive '" + head + "'", line_no);
    }
    std::string trailing;
    if (ls >> trailing) throw parse_error("netlist: trailing tokens", line_no);
  }
  if (!header_seen) throw parse_error("netlist: missing header", line_no);

  for (const RawEdge& e : raw_edges) {
    auto s = id_map.find(e.src);
    auto d = id_map.find(e.dst);
    if (s == id_map.end() || d == id_map.end())
      throw parse_error("netlist: edge references unknown vertex", e.line);
    c.edges.push_back({s->second, d->second});
  }

  if (check_valid) require_valid(c);
  return c;
}

inline Circuit parse_netlist(const std::string& text, bool check_valid = true) {
  std::istringstream in(text);
  return parse_netlist(in, check_valid);
}

}  // namespace cforge
