#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cforge/bitstring.hpp"
#include "cforge/errors.hpp"

namespace cforge {

// Explicit, possibly partial function {0,1}^m -> {0,1}^n. Entries are
// indexed by the integer form of the input, values stored likewise.
class FunctionTable {
public:
  FunctionTable(std::uint32_t m, std::uint32_t n) : m_(m), n_(n) {
    if (m > 20) throw cap_error("function table: domain length too large");
    if (n > 62) throw cap_error("function table: codomain length too large");
    entries_.assign(std::size_t{1} << m, std::nullopt);
  }

  std::uint32_t domain_length() const { return m_; }
  std::uint32_t codomain_length() const { return n_; }
  std::size_t domain_span() const { return entries_.size(); }
  std::size_t codomain_span() const { return std::size_t{1} << n_; }

  bool defined(std::uint64_t x) const { return entries_[x].has_value(); }
  std::uint64_t value(std::uint64_t x) const { return *entries_[x]; }
  std::optional<std::uint64_t> lookup(std::uint64_t x) const { return entries_[x]; }

  void set(std::uint64_t x, std::uint64_t y) { entries_[x] = y; }
  void unset(std::uint64_t x) { entries_[x] = std::nullopt; }

  void set(const BitString& x, const BitString& y) {
    if (x.size() != m_ || y.size() != n_)
      throw arity_error("function table: arity");
    set(x.to_index(), y.to_index());
  }

  std::optional<BitString> apply(const BitString& x) const {
    if (x.size() != m_) throw arity_error("function table: arity");
    auto v = entries_[x.to_index()];
    if (!v) return std::nullopt;
    return BitString::from_index(*v, n_);
  }

  bool total() const {
    for (const auto& e : entries_)
      if (!e) return false;
    return true;
  }

  bool empty_domain() const {
    for (const auto& e : entries_)
      if (e) return false;
    return true;
  }

  bool injective_on_domain() const {
    std::vector<bool> seen(codomain_span(), false);
    for (const auto& e : entries_) {
      if (!e) continue;
      if (seen[*e]) return false;
      seen[*e] = true;
    }
    return true;
  }

  std::vector<bool> image_mask() const {
    std::vector<bool> seen(codomain_span(), false);
    for (const auto& e : entries_)
      if (e) seen[*e] = true;
    return seen;
  }

  bool surjective() const {
    auto seen = image_mask();
    for (bool b : seen)
      if (!b) return false;
    return true;
  }

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

private:
  std::uint32_t m_;
  std::uint32_t n_;
  std::vector<std::optional<std::uint64_t>> entries_;
};

// f after g: x -> f(g(x)). Defined where the whole chain is defined.
inline FunctionTable compose(const FunctionTable& f, const FunctionTable& g) {
  if (g.codomain_length() != f.domain_length())
    throw arity_error("compose: arities do not chain");
  FunctionTable r(g.domain_length(), f.codomain_length());
  for (std::uint64_t x = 0; x < g.domain_span(); ++x) {
    if (!g.defined(x)) continue;
    std::uint64_t mid = g.value(x);
    if (!f.defined(mid)) continue;
    r.set(x, f.value(mid));
  }
  return r;
}

// Visits every partial table {0,1}^m -> {0,1}^n. Intended for small
// arities only: there are (2^n + 1)^(2^m) of them.
inline void for_each_partial_table(std::uint32_t m, std::uint32_t n,
                                   const std::function<void(const FunctionTable&)>& fn) {
  const std::uint64_t points = std::uint64_t{1} << m;
  const std::uint64_t choices = (std::uint64_t{1} << n) + 1;  // values plus "undefined"
  double count = 1.0;
  for (std::uint64_t i = 0; i < points; ++i) count *= static_cast<double>(choices);
  if (count > 2.0e8) throw cap_error("for_each_partial_table: too many tables");

  std::vector<std::uint64_t> digits(points, 0);
  FunctionTable t(m, n);
  while (true) {
    fn(t);
    std::uint64_t pos = 0;
    for (; pos < points; ++pos) {
      if (++digits[pos] < choices) break;
      digits[pos] = 0;
    }
    if (pos == points) break;
    for (std::uint64_t i = 0; i <= pos; ++i) {
      if (digits[i] == 0)
        t.unset(i);
      else
        t.set(i, digits[i] - 1);
    }
  }
}

}  // namespace cforge
