#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cforge/bitstring.hpp"
#include "cforge/errors.hpp"

namespace cforge {

// Boolean formula AST over variables x1..x<var_count>. Indices are dense:
// 1..var_count, assigned by first appearance when parsed from text.
// Constant nodes cannot be written in the grammar; they exist for
// programmatic construction (hardwiring uses them).
class Formula {
public:
  enum class NodeKind : std::uint8_t { Var, Const, Not, And, Or };

  struct Node {
    NodeKind kind = NodeKind::Var;
    std::uint32_t child0 = 0;
    std::uint32_t child1 = 0;
    std::uint32_t var = 0;  // 1-based
    std::uint8_t value = 0;
  };

  static Formula variable(std::uint32_t index) {
    if (index == 0) throw std::invalid_argument("formula: variable index is 1-based");
    Formula f;
    f.nodes_.push_back({NodeKind::Var, 0, 0, index, 0});
    f.root_ = 0;
    f.var_count_ = index;
    return f;
  }

  static Formula constant(bool value) {
    Formula f;
    f.nodes_.push_back({NodeKind::Const, 0, 0, 0, static_cast<std::uint8_t>(value ? 1 : 0)});
    f.root_ = 0;
    f.var_count_ = 0;
    return f;
  }

  friend Formula f_not(const Formula& a) {
    Formula f = a;
    f.nodes_.push_back({NodeKind::Not, f.root_, 0, 0, 0});
    f.root_ = static_cast<std::uint32_t>(f.nodes_.size() - 1);
    return f;
  }

  friend Formula f_and(const Formula& a, const Formula& b) { return binary(NodeKind::And, a, b); }
  friend Formula f_or(const Formula& a, const Formula& b) { return binary(NodeKind::Or, a, b); }

  std::uint32_t var_count() const { return var_count_; }
  void set_var_count(std::uint32_t vc) {
    if (vc < var_count_) throw std::invalid_argument("formula: var count below used indices");
    var_count_ = vc;
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::uint32_t root() const { return root_; }
  const Node& node(std::uint32_t i) const { return nodes_[i]; }

  const std::vector<std::string>& var_names() const { return var_names_; }

  bool eval(const BitString& assignment) const {
    if (assignment.size() != var_count_) throw arity_error("eval_formula: arity");
    return eval_node(root_, [&](std::uint32_t v) { return assignment[v - 1] != 0; });
  }

  // Truth table packed into a word: bit index is the integer form of the
  // assignment (x1 most significant). Needs var_count <= 6.
  std::uint64_t truth_word() const {
    if (var_count_ > 6) throw cap_error("truth_word: more than 6 variables");
    std::uint64_t out = 0;
    const std::uint64_t total = std::uint64_t{1} << var_count_;
    for (std::uint64_t a = 0; a < total; ++a) {
      bool v = eval_node(root_, [&](std::uint32_t var) {
        return ((a >> (var_count_ - var)) & 1u) != 0;
      });
      if (v) out |= std::uint64_t{1} << a;
    }
    return out;
  }

  // Rebuilds the formula with every variable index replaced through `map`
  // (1-based, map[old] = new). The new var count is given explicitly so a
  // formula can be embedded into a wider variable space.
  Formula remap_variables(const std::vector<std::uint32_t>& map, std::uint32_t new_var_count) const {
    Formula f = *this;
    for (Node& nd : f.nodes_)
      if (nd.kind == NodeKind::Var) {
        if (nd.var >= map.size() || map[nd.var] == 0)
          throw std::invalid_argument("remap_variables: missing mapping");
        nd.var = map[nd.var];
      }
    f.var_count_ = new_var_count;
    f.var_names_.clear();
    return f;
  }

  std::string str() const { return print_node(root_, 0); }

  // Number of textual uses per variable index (1-based; slot 0 unused).
  std::vector<std::uint32_t> use_counts() const {
    std::vector<std::uint32_t> uses(var_count_ + 1, 0);
    count_uses(root_, uses);
    return uses;
  }

private:
  static Formula binary(NodeKind kind, const Formula& a, const Formula& b) {
    Formula f = a;
    const std::uint32_t shift = static_cast<std::uint32_t>(f.nodes_.size());
    for (Node nd : b.nodes_) {
      if (nd.kind == NodeKind::Not) nd.child0 += shift;
      if (nd.kind == NodeKind::And || nd.kind == NodeKind::Or) {
        nd.child0 += shift;
        nd.child1 += shift;
      }
      f.nodes_.push_back(nd);
    }
    f.nodes_.push_back({kind, f.root_, b.root_ + shift, 0, 0});
    f.root_ = static_cast<std::uint32_t>(f.nodes_.size() - 1);
    f.var_count_ = std::max(a.var_count_, b.var_count_);
    return f;
  }

  template <typename VarFn>
  bool eval_node(std::uint32_t i, const VarFn& var) const {
    const Node& nd = nodes_[i];
    switch (nd.kind) {
      case NodeKind::Var: return var(nd.var);
      case NodeKind::Const: return nd.value != 0;
      case NodeKind::Not: return !eval_node(nd.child0, var);
      case NodeKind::And: return eval_node(nd.child0, var) && eval_node(nd.child1, var);
      case NodeKind::Or: return eval_node(nd.child0, var) || eval_node(nd.child1, var);
    }
    return false;
  }

  void count_uses(std::uint32_t i, std::vector<std::uint32_t>& uses) const {
    const Node& nd = nodes_[i];
    switch (nd.kind) {
      case NodeKind::Var: ++uses[nd.var]; break;
      case NodeKind::Const: break;
      case NodeKind::Not: count_uses(nd.child0, uses); break;
      case NodeKind::And:
      case NodeKind::Or:
        count_uses(nd.child0, uses);
        count_uses(nd.child1, uses);
        break;
    }
  }

  // Precedence for printing: | lowest, & middle, ! binds tightest.
  std::string print_node(std::uint32_t i, int parent_level) const {
    const Node& nd = nodes_[i];
    std::string s;
    int level = 0;
    switch (nd.kind) {
      case NodeKind::Var:
        s = var_name(nd.var);
        level = 3;
        break;
      case NodeKind::Const:
        s = nd.value ? "<1>" : "<0>";
        level = 3;
        break;
      case NodeKind::Not:
        s = "!" + print_node(nd.child0, 3);
        level = 3;
        break;
      case NodeKind::And:
        s = print_node(nd.child0, 2) + " & " + print_node(nd.child1, 2);
        level = 2;
        break;
      case NodeKind::Or:
        s = print_node(nd.child0, 1) + " | " + print_node(nd.child1, 1);
        level = 1;
        break;
    }
    if (level < parent_level) return "(" + s + ")";
    return s;
  }

  std::string var_name(std::uint32_t idx) const {
    if (idx <= var_names_.size() && !var_names_[idx - 1].empty()) return var_names_[idx - 1];
    return "x" + std::to_string(idx);
  }

  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
  std::uint32_t var_count_ = 0;
  std::vector<std::string> var_names_;

  friend Formula parse_formula(std::string_view);
};

// Grammar: or := and ('|' and)* ; and := unary ('&' unary)* ;
// unary := '!' unary | 'x'<digits> | '(' or ')'. Variables are numbered
// by first appearance.
inline Formula parse_formula(std::string_view text) {
  struct Parser {
    std::string_view s;
    std::size_t pos = 0;
    std::map<std::string, std::uint32_t, std::less<>> vars;
    std::vector<std::string> names;

    void skip_ws() {
      while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r'))
        ++pos;
    }

    bool eat(char ch) {
      skip_ws();
      if (pos < s.size() && s[pos] == ch) {
        ++pos;
        return true;
      }
      return false;
    }

    Formula parse_or() {
      Formula f = parse_and();
      while (eat('|')) f = f_or(f, parse_and());
      return f;
    }

    Formula parse_and() {
      Formula f = parse_unary();
      while (eat('&')) f = f_and(f, parse_unary());
      return f;
    }

    Formula parse_unary() {
      skip_ws();
      if (pos >= s.size()) throw parse_error("formula: unexpected end of input", pos);
      if (s[pos] == '!') {
        ++pos;
        return f_not(parse_unary());
      }
      if (s[pos] == '(') {
        ++pos;
        Formula f = parse_or();
        if (!eat(')')) throw parse_error("formula: expected ')'", pos);
        return f;
      }
      if (s[pos] == 'x') {
        std::size_t start = pos;
        ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
          ++pos;
          ++digits;
        }
        if (digits == 0) throw parse_error("formula: expected digits after 'x'", pos);
        std::string name(s.substr(start, pos - start));
        auto it = vars.find(name);
        std::uint32_t index;
        if (it == vars.end()) {
          index = static_cast<std::uint32_t>(vars.size() + 1);
          vars.emplace(name, index);
          names.push_back(name);
        } else {
          index = it->second;
        }
        return Formula::variable(index);
      }
      throw parse_error(std::string("formula: unexpected character '") + s[pos] + "'", pos);
    }
  };

  Parser p{text};
  Formula f = p.parse_or();
  p.skip_ws();
  if (p.pos != text.size()) throw parse_error("formula: trailing input", p.pos);
  f.var_count_ = static_cast<std::uint32_t>(p.vars.size());
  f.var_names_ = p.names;
  return f;
}

inline bool eval_formula(const Formula& f, const BitString& assignment) {
  return f.eval(assignment);
}

inline bool is_tautology(const Formula& f, std::size_t cap = brute_force_cap()) {
  if (f.var_count() > cap) throw cap_error("is_tautology: cap exceeded");
  const std::uint64_t total = std::uint64_t{1} << f.var_count();
  for (std::uint64_t a = 0; a < total; ++a)
    if (!f.eval(BitString::from_index(a, f.var_count()))) return false;
  return true;
}

// Truth of the sentence (forall y-vars)(exists x-vars) f. The two index
// sets must partition 1..var_count; either side may be empty, which
// degenerates to a plain forall (empty x) or exists (empty y) check.
inline bool forall_exists(const Formula& f, const std::vector<std::uint32_t>& x_vars,
                          const std::vector<std::uint32_t>& y_vars,
                          std::size_t cap = brute_force_cap()) {
  const std::uint32_t vc = f.var_count();
  if (vc > cap) throw cap_error("forall_exists: cap exceeded");
  std::vector<std::uint8_t> role(vc + 1, 0);
  for (std::uint32_t v : x_vars) {
    if (v < 1 || v > vc || role[v] != 0)
      throw std::invalid_argument("forall_exists: x/y sets must partition the variables");
    role[v] = 1;
  }
  for (std::uint32_t v : y_vars) {
    if (v < 1 || v > vc || role[v] != 0)
      throw std::invalid_argument("forall_exists: x/y sets must partition the variables");
    role[v] = 2;
  }
  for (std::uint32_t v = 1; v <= vc; ++v)
    if (role[v] == 0)
      throw std::invalid_argument("forall_exists: x/y sets must partition the variables");

  const std::uint64_t y_total = std::uint64_t{1} << y_vars.size();
  const std::uint64_t x_total = std::uint64_t{1} << x_vars.size();
  BitString assignment = BitString::zeros(vc);
  for (std::uint64_t ya = 0; ya < y_total; ++ya) {
    for (std::size_t k = 0; k < y_vars.size(); ++k)
      assignment.set(y_vars[k] - 1, ((ya >> (y_vars.size() - 1 - k)) & 1u) != 0);
    bool witness = false;
    for (std::uint64_t xa = 0; xa < x_total && !witness; ++xa) {
      for (std::size_t k = 0; k < x_vars.size(); ++k)
        assignment.set(x_vars[k] - 1, ((xa >> (x_vars.size() - 1 - k)) & 1u) != 0);
      witness = f.eval(assignment);
    }
    if (!witness) return false;
  }
  return true;
}

}  // namespace cforge
