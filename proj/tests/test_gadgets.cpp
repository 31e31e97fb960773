#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cforge/evaluate.hpp"
#include "cforge/formula.hpp"
#include "cforge/gadgets.hpp"
#include "support/test_support.hpp"

using namespace cforge;

namespace {

// The defining case split, used as an oracle against the compiled gadget.
BitString f_b_case_split(const Formula& b, const BitString& input) {
  const std::uint32_t n = b.var_count();
  BitString x = input.prefix(n);
  if (b.eval(x) || input[n]) return input;
  return BitString::ones(n + 1);
}

BitString c_b_case_split(const Formula& b, std::uint32_t m, std::uint32_t n,
                         const BitString& input) {
  BitString xy = input.prefix(m + n);
  BitString y_tail = input.suffix_from(m);  // (y, y_{n+1})
  if (b.eval(xy) || input[m + n]) return y_tail;
  return BitString::ones(n + 1);
}

}  // namespace

TEST_CASE("injectivity gadget has matching arities (length-preserving)") {
  Formula b = parse_formula("x1 & x2");
  Circuit fb = injectivity_gadget(b);
  CHECK(fb.m == 3);
  CHECK(fb.n == 3);
  CHECK(validate(fb).ok());
}

TEST_CASE("F_B collapses non-witnesses to all ones") {
  Circuit fb = injectivity_gadget(parse_formula("x1"));
  CHECK(evaluate(fb, BitString("00")).str() == "11");
  CHECK(evaluate(fb, BitString("11")).str() == "11");
  CHECK_FALSE(is_injective(fb));
}

TEST_CASE("F_B of a tautology is the identity") {
  Circuit fb = injectivity_gadget(parse_formula("x1 | !x1"));
  CHECK(is_identity(fb));
  CHECK(is_injective(fb));
}

TEST_CASE("F_B agrees with its case split everywhere") {
  for (const char* text : {"x1", "x1 & x2", "x1 | !x2", "(x1 & x2) | x3", "!x1"}) {
    Formula b = parse_formula(text);
    Circuit fb = injectivity_gadget(b);
    for (std::uint64_t a = 0; a < (1u << fb.m); ++a) {
      BitString in = BitString::from_index(a, fb.m);
      CHECK(evaluate(fb, in) == f_b_case_split(b, in));
    }
  }
}

TEST_CASE("surjectivity gadget arities: m+n+1 in, n+1 out") {
  Formula b = parse_formula("x1 & x2");
  Circuit cb = surjectivity_gadget(b, {1}, {2});
  CHECK(cb.m == 3);
  CHECK(cb.n == 2);
  CHECK(validate(cb).ok());
}

TEST_CASE("C_B for x&y matches the case split on all 8 inputs") {
  Formula b = parse_formula("x1 & x2");
  Circuit cb = surjectivity_gadget(b, {1}, {2});
  FunctionTable table = function_table(cb);
  for (std::uint64_t a = 0; a < 8; ++a) {
    BitString in = BitString::from_index(a, 3);
    CHECK(BitString::from_index(table.value(a), 2) == c_b_case_split(b, 1, 1, in));
  }
  CHECK_FALSE(forall_exists(b, {1}, {2}));
  CHECK_FALSE(is_surjective(cb));
}

TEST_CASE("image of C_B matches the closed form") {
  // im(C_B) = {0,1}^n . 1  union  { y : exists x B(x,y) } . 0
  for (const char* text : {"x1 & x2", "x1 | x2", "x1 & !x2", "(x1 | x2) & x3"}) {
    Formula b = parse_formula(text);
    std::vector<std::uint32_t> xs = {1};
    std::vector<std::uint32_t> ys;
    for (std::uint32_t v = 2; v <= b.var_count(); ++v) ys.push_back(v);
    if (ys.empty()) continue;
    const std::uint32_t m = 1, n = static_cast<std::uint32_t>(ys.size());
    Circuit cb = surjectivity_gadget(b, xs, ys);

    std::set<BitString> expected;
    for (std::uint64_t y = 0; y < (1u << n); ++y) {
      expected.insert(BitString::from_index(y, n) + BitString("1"));
      bool witness = false;
      for (std::uint64_t x = 0; x < (1u << m) && !witness; ++x) {
        BitString assignment = BitString::from_index(x, m) + BitString::from_index(y, n);
        witness = b.eval(assignment);
      }
      if (witness) expected.insert(BitString::from_index(y, n) + BitString("0"));
    }
    CHECK(image(cb) == expected);
  }
}

TEST_CASE("C_B of a tautology is surjective") {
  Formula b = parse_formula("x1 | !x1 | x2");
  Circuit cb = surjectivity_gadget(b, {1}, {2});
  CHECK(is_surjective(cb));
}

TEST_CASE("equivalence battery at small scale") {
  // All two-variable formulas of depth <= 3 by brute force over shapes.
  std::vector<Formula> pool;
  pool.push_back(parse_formula("x1"));
  pool.push_back(parse_formula("!x1"));
  pool.push_back(parse_formula("x1 | !x1"));
  pool.push_back(parse_formula("x1 & !x1"));
  pool.push_back(parse_formula("x1 & x2"));
  pool.push_back(parse_formula("x1 | x2"));
  pool.push_back(parse_formula("(x1 & x2) | !x1 | !x2"));
  pool.push_back(parse_formula("(x1 & x2) | (!x1 & !x2)"));
  for (const Formula& b : pool) {
    Circuit fb = injectivity_gadget(b);
    const bool taut = is_tautology(b);
    CHECK(taut == is_identity(fb));
    CHECK(taut == is_injective(fb));
    if (b.var_count() >= 2) {
      Circuit cb = surjectivity_gadget(b, {1}, {2});
      CHECK(forall_exists(b, {1}, {2}) == is_surjective(cb));
    }
  }
}

TEST_CASE("partition validation") {
  Formula b = parse_formula("x1 & x2");
  CHECK_THROWS_AS(surjectivity_gadget(b, {1, 2}, {}), std::invalid_argument);
  CHECK_THROWS_AS(surjectivity_gadget(b, {1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(surjectivity_gadget(b, {1}, {3}), std::invalid_argument);
}

TEST_CASE("both gadgets match their case splits on sampled wide formulas") {
  std::mt19937 rng(0);
  int sampled = 0;
  while (sampled < 200) {
    Formula b = test_support::random_formula(rng, 5, 4);
    const std::uint32_t k = b.var_count();
    if (k == 0) continue;
    ++sampled;

    Circuit fb = injectivity_gadget(b);
    for (std::uint64_t a = 0; a < (1u << (k + 1)); ++a) {
      BitString in = BitString::from_index(a, k + 1);
      REQUIRE(evaluate(fb, in) == f_b_case_split(b, in));
    }

    if (k < 2) continue;
    std::uniform_int_distribution<std::uint32_t> cut(1, k - 1);
    const std::uint32_t m = cut(rng);
    std::vector<std::uint32_t> xs, ys;
    for (std::uint32_t v = 1; v <= k; ++v) (v <= m ? xs : ys).push_back(v);
    Circuit cb = surjectivity_gadget(b, xs, ys);
    const std::uint32_t n = k - m;
    for (std::uint64_t a = 0; a < (1u << (k + 1)); ++a) {
      BitString in = BitString::from_index(a, k + 1);
      REQUIRE(evaluate(cb, in) == c_b_case_split(b, m, n, in));
    }
  }
}
