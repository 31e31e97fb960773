#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <thread>

#include "cforge/circuit.hpp"
#include "cforge/compile.hpp"
#include "cforge/enumerate.hpp"
#include "cforge/evaluate.hpp"
#include "cforge/formula.hpp"
#include "cforge/netlist.hpp"
#include "support/test_support.hpp"

using namespace cforge;

namespace {

Circuit not_circuit() {
  Circuit c;
  c.m = 1;
  c.n = 1;
  c.vertices = {gate_in(1), gate_not(), gate_out(1)};
  c.edges = {{0, 1}, {1, 2}};
  return c;
}

// Alternative evaluator used as an independence check: memoized recursion
// from the outputs, no explicit topological order.
BitString eval_by_recursion(const Circuit& c, const BitString& x) {
  std::vector<std::vector<std::uint32_t>> srcs(c.vertices.size());
  for (const Edge& e : c.edges) srcs[e.dst].push_back(e.src);
  std::map<std::uint32_t, bool> memo;
  auto value = [&](auto&& self, std::uint32_t v) -> bool {
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    const GateKind& g = c.vertices[v];
    bool r = false;
    switch (g.op) {
      case GateOp::In: r = x[g.port - 1]; break;
      case GateOp::Not: r = !self(self, srcs[v][0]); break;
      case GateOp::Fork: r = self(self, srcs[v][0]); break;
      case GateOp::And: r = self(self, srcs[v][0]) && self(self, srcs[v][1]); break;
      case GateOp::Or: r = self(self, srcs[v][0]) || self(self, srcs[v][1]); break;
      case GateOp::Out: r = self(self, srcs[v][0]); break;
    }
    memo[v] = r;
    return r;
  };
  BitString y = BitString::zeros(c.n);
  for (std::uint32_t v = 0; v < c.vertices.size(); ++v)
    if (c.vertices[v].op == GateOp::Out) y.set(c.vertices[v].port - 1, value(value, v));
  return y;
}

}  // namespace

TEST_CASE("identity circuit is the minimal legal circuit") {
  Circuit c = identity_circuit(1);
  CHECK(validate(c).ok());
  CHECK(c.vertices.size() == 2);
  CHECK(c.edges.size() == 1);
  CHECK(circuit_size(c) == 3);
  CHECK_THROWS_AS(identity_circuit(0), std::invalid_argument);
}

TEST_CASE("size counts vertices plus edges") {
  CHECK(circuit_size(not_circuit()) == 5);
  for (std::uint32_t m = 1; m <= 8; ++m) CHECK(circuit_size(identity_circuit(m)) == 3 * m);
}

TEST_CASE("validation names the offending vertex") {
  Circuit bad;
  bad.m = 1;
  bad.n = 1;
  bad.vertices = {gate_in(1), gate_and(), gate_out(1)};
  bad.edges = {{0, 1}, {1, 2}};  // and-gate with in-degree 1
  ValidationReport r = validate(bad);
  CHECK_FALSE(r.ok());
  bool mentions = false;
  for (const Violation& v : r.violations)
    if (v.message.find("vertex 1") != std::string::npos) mentions = true;
  CHECK(mentions);
}

TEST_CASE("validation rejects cycles") {
  Circuit bad;
  bad.m = 1;
  bad.n = 1;
  bad.vertices = {gate_in(1), gate_not(), gate_not(), gate_out(1)};
  // in dangles; the two not-gates feed each other
  bad.edges = {{1, 2}, {2, 1}, {1, 3}};
  ValidationReport r = validate(bad);
  bool cyclic = false;
  for (const Violation& v : r.violations)
    if (v.message.find("cycle") != std::string::npos) cyclic = true;
  CHECK(cyclic);
}

TEST_CASE("validation requires unique input/output labels") {
  Circuit bad = identity_circuit(2);
  bad.vertices[1] = gate_in(1);  // in1 twice, in2 missing
  CHECK_FALSE(validate(bad).ok());
}

TEST_CASE("evaluate basics") {
  CHECK(evaluate(identity_circuit(2), BitString("10")).str() == "10");
  CHECK(evaluate(identity_circuit(4), BitString("1010")).str() == "1010");
  CHECK(evaluate(not_circuit(), BitString("1")).str() == "0");
  CHECK(evaluate(not_circuit(), BitString("0")).str() == "1");
  CHECK_THROWS_AS(evaluate(identity_circuit(2), BitString("1")), arity_error);
}

TEST_CASE("function table materializes the evaluation map") {
  FunctionTable id1 = function_table(identity_circuit(1));
  CHECK(id1.value(0) == 0);
  CHECK(id1.value(1) == 1);
  FunctionTable neg = function_table(not_circuit());
  CHECK(neg.value(0) == 1);
  CHECK(neg.value(1) == 0);
}

TEST_CASE("function table agrees with evaluate pointwise") {
  for (const Circuit& c : enumerate_circuits(2, 2, 9)) {
    FunctionTable t = function_table(c);
    for (std::uint64_t x = 0; x < t.domain_span(); ++x) {
      BitString in = BitString::from_index(x, c.m);
      CHECK(t.value(x) == evaluate(c, in).to_index());
    }
  }
}

TEST_CASE("image of the identity covers everything, constants collapse") {
  CHECK(image(identity_circuit(2)).size() == 4);
  Circuit constant = compile_formula(parse_formula("x1 & !x1"));
  auto im = image(constant);
  CHECK(im.size() == 1);
  CHECK(im.begin()->str() == "0");
}

TEST_CASE("property checks on identity and constants") {
  Circuit id2 = identity_circuit(2);
  CHECK(is_injective(id2));
  CHECK(is_surjective(id2));
  CHECK(is_identity(id2));
  Circuit constant = compile_formula(parse_formula("x1 & !x1"));
  CHECK_FALSE(is_injective(constant));
  CHECK_FALSE(is_surjective(constant));
  CHECK_FALSE(is_identity(constant));
}

TEST_CASE("identity implies injective implies the surjectivity criterion") {
  for (const Circuit& c : enumerate_circuits(2, 2, 10)) {
    if (is_identity(c)) CHECK(is_injective(c));
    if (is_injective(c))
      CHECK(is_surjective(c) == (c.m == c.n && image(c).size() == (1u << c.n)));
  }
}

TEST_CASE("cap exceeded is refused, not truncated") {
  CHECK_THROWS_AS(function_table(identity_circuit(17)), cap_error);
  CHECK_THROWS_AS(is_surjective(identity_circuit(17)), cap_error);
  CHECK(is_surjective(identity_circuit(17), 20));
}

TEST_CASE("evaluation does not depend on the traversal strategy") {
  std::vector<Circuit> pool = enumerate_circuits(2, 1, 9);
  for (const Circuit& c : pool) {
    for (std::uint64_t x = 0; x < (1u << c.m); ++x) {
      BitString in = BitString::from_index(x, c.m);
      CHECK(evaluate(c, in) == eval_by_recursion(c, in));
    }
  }
}

TEST_CASE("evaluation strategies agree on larger random circuits") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t m = 1 + rng() % 4;
    const std::uint32_t n = 1 + rng() % 4;
    Circuit c = test_support::random_circuit(rng, m, n, rng() % 12);
    REQUIRE(validate(c).ok());
    for (std::uint64_t x = 0; x < (1u << m); ++x) {
      BitString in = BitString::from_index(x, m);
      CHECK(evaluate(c, in) == eval_by_recursion(c, in));
    }
    FunctionTable bulk = function_table(c);
    for (std::uint64_t x = 0; x < (1u << m); ++x)
      CHECK(bulk.value(x) == evaluate(c, BitString::from_index(x, m)).to_index());
  }
}

TEST_CASE("evaluation is safe to run concurrently") {
  Circuit c = compile_formula(parse_formula("(x1 | x2) & !x3"));
  std::vector<std::thread> pool;
  std::array<bool, 8> fine{};
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&, t] {
      bool ok = true;
      for (std::uint64_t x = 0; x < 8; ++x) {
        BitString in = BitString::from_index(x, 3);
        ok = ok && evaluate(c, in).size() == 1;
      }
      fine[t] = ok;
    });
  for (auto& th : pool) th.join();
  for (bool b : fine) CHECK(b);
}

TEST_CASE("netlist round trip") {
  Circuit c = compile_formula(parse_formula("(x1 | x2) & !x3"));
  Circuit back = parse_netlist(to_netlist(c));
  CHECK(back == c);
}

TEST_CASE("netlist round trips across the enumeration suite") {
  for (std::uint32_t m = 1; m <= 3; ++m)
    for (std::uint32_t n = 1; n <= 3; ++n)
      for (const Circuit& c : enumerate_circuits(m, n, 12))
        CHECK(parse_netlist(to_netlist(c)) == c);
}

TEST_CASE("netlist accepts comments and reports errors") {
  Circuit c = parse_netlist("# a wire\ncircuit 1 1\nv 10 in1\nv 20 out1 # trailing\ne 10 20\n");
  CHECK(c == identity_circuit(1));
  CHECK_THROWS_AS(parse_netlist("circuit 1 1\nv 0 in1\nv 1 zap\ne 0 1\n"), parse_error);
  CHECK_THROWS_AS(parse_netlist("v 0 in1\n"), parse_error);
  CHECK_THROWS_AS(parse_netlist("circuit 1 1\nv 0 in1\nv 1 out1\ne 0 7\n"), parse_error);
  // structurally broken but parseable netlists fail validation
  CHECK_THROWS_AS(parse_netlist("circuit 1 1\nv 0 in1\nv 1 out1\n"), validation_error);
}

TEST_CASE("projection circuits") {
  Circuit p = projection_circuit(3, 1);
  CHECK(validate(p).ok());
  CHECK(circuit_size(p) == 5);
  CHECK(evaluate(p, BitString("101")).str() == "1");
  CHECK(is_surjective(p));
}
