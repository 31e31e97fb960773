#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cforge/enumerate.hpp"
#include "cforge/evaluate.hpp"
#include "cforge/function_table.hpp"
#include "cforge/inverse.hpp"
#include "cforge/transforms.hpp"

using namespace cforge;

namespace {

FunctionTable identity_table(std::uint32_t m) {
  FunctionTable t(m, m);
  for (std::uint64_t x = 0; x < t.domain_span(); ++x) t.set(x, x);
  return t;
}

}  // namespace

TEST_CASE("identity is every kind of inverse of itself") {
  FunctionTable id = identity_table(2);
  CHECK(is_semi_inverse(id, id));
  CHECK(is_mutual_inverse(id, id));
  CHECK(is_right_inverse(id, id));
}

TEST_CASE("semi-inverse of a constant function") {
  // F(x) = 0 for both inputs; F' only needs F(F'(0)) = 0.
  FunctionTable f(1, 1);
  f.set(0, 0);
  f.set(1, 0);
  FunctionTable fp(1, 1);
  fp.set(0, 1);  // any preimage of 0 works
  CHECK(is_semi_inverse(f, fp));
  fp.unset(0);
  fp.set(1, 0);  // defined only off the image
  CHECK_FALSE(is_semi_inverse(f, fp));
}

TEST_CASE("the two semi-inverse characterizations agree") {
  for_each_partial_table(1, 2, [&](const FunctionTable& f) {
    for_each_partial_table(2, 1, [&](const FunctionTable& fp) {
      CHECK(is_semi_inverse(f, fp) == semi_inverse_via_restriction(f, fp));
    });
  });
}

TEST_CASE("well-known facts about semi-inverses") {
  for_each_partial_table(2, 1, [&](const FunctionTable& f) {
    if (f.empty_domain()) return;
    for_each_partial_table(1, 2, [&](const FunctionTable& fp) {
      if (!is_semi_inverse(f, fp)) return;
      // im(F) is inside dom(F'), and F' is injective there.
      auto im = f.image_mask();
      std::vector<std::uint64_t> values;
      for (std::uint64_t y = 0; y < im.size(); ++y) {
        if (!im[y]) continue;
        REQUIRE(fp.defined(y));
        values.push_back(fp.value(y));
      }
      std::sort(values.begin(), values.end());
      CHECK(std::adjacent_find(values.begin(), values.end()) == values.end());
      // F' o F o F' is a mutual inverse of F.
      FunctionTable mut = mutualize(f, fp);
      CHECK(is_semi_inverse(f, mut));
      CHECK(is_semi_inverse(mut, f));
    });
  });
}

TEST_CASE("inverse kinds form a chain: right implies mutual implies semi") {
  for_each_partial_table(2, 1, [&](const FunctionTable& f) {
    for_each_partial_table(1, 2, [&](const FunctionTable& fp) {
      if (is_right_inverse(f, fp)) CHECK(is_mutual_inverse(f, fp));
      if (is_mutual_inverse(f, fp)) CHECK(is_semi_inverse(f, fp));
    });
  });
}

TEST_CASE("right inverse iff total injective mutual inverse") {
  for_each_partial_table(1, 1, [&](const FunctionTable& f) {
    for_each_partial_table(1, 1, [&](const FunctionTable& fp) {
      const bool right = is_right_inverse(f, fp);
      const bool mutual_total_injective =
          is_mutual_inverse(f, fp) && fp.total() && fp.injective_on_domain();
      CHECK(right == mutual_total_injective);
    });
  });
}

TEST_CASE("canonical semi-inverse golden values") {
  FunctionTable id = identity_table(1);
  CHECK(canonical_semi_inverse(id, SemiInverseVariant::Total) == id);
  CHECK(canonical_semi_inverse(id, SemiInverseVariant::InjectiveOnImage) == id);

  // F(00)=F(01)=0, F(10)=F(11)=1 -> lex-least preimages 00 and 10.
  FunctionTable f(2, 1);
  f.set(0b00, 0);
  f.set(0b01, 0);
  f.set(0b10, 1);
  f.set(0b11, 1);
  FunctionTable fp = canonical_semi_inverse(f, SemiInverseVariant::Total);
  CHECK(fp.value(0) == 0b00);
  CHECK(fp.value(1) == 0b10);
  CHECK(is_semi_inverse(f, fp));
}

TEST_CASE("canonical variants are semi-inverses; both coincide when surjective") {
  for_each_partial_table(2, 1, [&](const FunctionTable& f) {
    if (f.empty_domain()) return;
    FunctionTable total = canonical_semi_inverse(f, SemiInverseVariant::Total);
    FunctionTable narrow = canonical_semi_inverse(f, SemiInverseVariant::InjectiveOnImage);
    CHECK(is_semi_inverse(f, total));
    CHECK(is_semi_inverse(f, narrow));
    CHECK(total.total());
    CHECK(narrow.injective_on_domain());
    if (f.surjective()) {
      CHECK(total == narrow);
      CHECK(is_right_inverse(f, total));
    }
  });
}

TEST_CASE("mutualize output satisfies both mutual equations") {
  for_each_partial_table(2, 2, [&](const FunctionTable& f) {
    if (f.empty_domain()) return;
    FunctionTable fp = canonical_semi_inverse(f, SemiInverseVariant::Total);
    FunctionTable mut = mutualize(f, fp);
    CHECK(is_mutual_inverse(f, mut));
  });
  FunctionTable f(1, 1);
  f.set(0, 0);
  FunctionTable not_inverse(1, 1);
  not_inverse.set(0, 1);
  not_inverse.set(1, 1);
  CHECK_THROWS_AS(mutualize(f, not_inverse), std::invalid_argument);
}

TEST_CASE("composing circuits stays within the size bookkeeping bound") {
  // |C' o C o C'| <= 2 |C'| + |C|
  std::vector<Circuit> pool = enumerate_circuits(1, 1, 8);
  for (const Circuit& c : pool) {
    for (const Circuit& cp : pool) {
      Circuit once = compose_circuits(c, cp);   // C o C'
      Circuit full = compose_circuits(cp, once);  // C' o C o C'
      CHECK(validate(full).ok());
      CHECK(circuit_size(full) <= 2 * circuit_size(cp) + circuit_size(c));
      // and composition is the composition of the tables
      FunctionTable expect = compose(function_table(cp), compose(function_table(c), function_table(cp)));
      CHECK(function_table(full) == expect);
    }
  }
}

TEST_CASE("composition handles dangling inputs in the outer circuit") {
  Circuit ignore_input = projection_circuit(2, 1);   // drops its second input
  Circuit two_out = identity_circuit(2);
  Circuit composed = compose_circuits(ignore_input, two_out);
  CHECK(validate(composed).ok());
  CHECK(composed.m == 2);
  CHECK(composed.n == 1);
  FunctionTable t = function_table(composed);
  for (std::uint64_t x = 0; x < 4; ++x) CHECK(t.value(x) == (x >> 1));
}

TEST_CASE("arity mismatches are rejected") {
  FunctionTable f(2, 1);
  FunctionTable g(2, 1);
  CHECK_THROWS_AS(is_semi_inverse(f, g), arity_error);
  CHECK_THROWS_AS(compose(f, f), arity_error);
}
