#pragma once

#include <cstdint>
#include <stdexcept>

#include "cforge/errors.hpp"
#include "cforge/function_table.hpp"

namespace cforge {

enum class InverseKind { Semi, Mutual, Right };

namespace detail {

inline void require_inverse_arities(const FunctionTable& f, const FunctionTable& g) {
  if (f.codomain_length() != g.domain_length() || f.domain_length() != g.codomain_length())
    throw arity_error("inverse check: arities do not compose");
}

}  // namespace detail

// F o F' o F = F, as partial functions.
inline bool is_semi_inverse(const FunctionTable& f, const FunctionTable& fp) {
  detail::require_inverse_arities(f, fp);
  for (std::uint64_t x = 0; x < f.domain_span(); ++x) {
    if (!f.defined(x)) continue;
    const std::uint64_t y = f.value(x);
    if (!fp.defined(y)) return false;
    const std::uint64_t back = fp.value(y);
    if (!f.defined(back) || f.value(back) != y) return false;
  }
  return true;
}

// Equivalent form: (F o F') restricted to im(F) is the identity there.
// Kept separate so tests can confirm the two characterizations agree.
inline bool semi_inverse_via_restriction(const FunctionTable& f, const FunctionTable& fp) {
  detail::require_inverse_arities(f, fp);
  auto im = f.image_mask();
  for (std::uint64_t y = 0; y < im.size(); ++y) {
    if (!im[y]) continue;
    if (!fp.defined(y)) return false;
    const std::uint64_t x = fp.value(y);
    if (!f.defined(x) || f.value(x) != y) return false;
  }
  return true;
}

inline bool is_mutual_inverse(const FunctionTable& f, const FunctionTable& fp) {
  return is_semi_inverse(f, fp) && is_semi_inverse(fp, f);
}

// F o F' = id on the whole codomain of F.
inline bool is_right_inverse(const FunctionTable& f, const FunctionTable& fp) {
  detail::require_inverse_arities(f, fp);
  for (std::uint64_t y = 0; y < fp.domain_span(); ++y) {
    if (!fp.defined(y)) return false;
    const std::uint64_t x = fp.value(y);
    if (!f.defined(x) || f.value(x) != y) return false;
  }
  return true;
}

enum class SemiInverseVariant { Total, InjectiveOnImage };

// Lexicographically-least preimage on im(F); the total variant fills the
// rest of the domain with 0^m.
inline FunctionTable canonical_semi_inverse(const FunctionTable& f, SemiInverseVariant variant) {
  if (f.empty_domain())
    throw std::invalid_argument("canonical_semi_inverse: empty function");
  FunctionTable fp(f.codomain_length(), f.domain_length());
  auto im = f.image_mask();
  for (std::uint64_t y = 0; y < im.size(); ++y) {
    if (im[y]) {
      for (std::uint64_t x = 0; x < f.domain_span(); ++x)
        if (f.defined(x) && f.value(x) == y) {
          fp.set(y, x);
          break;
        }
    } else if (variant == SemiInverseVariant::Total) {
      fp.set(y, 0);
    }
  }
  return fp;
}

// F' o F o F', a mutual inverse of F whenever F' is a semi-inverse.
inline FunctionTable mutualize(const FunctionTable& f, const FunctionTable& fp) {
  if (!is_semi_inverse(f, fp))
    throw std::invalid_argument("mutualize: argument is not a semi-inverse");
  return compose(fp, compose(f, fp));
}

}  // namespace cforge
