#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cforge/circuit.hpp"
#include "cforge/compile.hpp"
#include "cforge/errors.hpp"
#include "cforge/formula.hpp"

namespace cforge {

// F_B on n+1 bits: the input passes through unchanged when B(x) = 1 or
// x_{n+1} = 1, and collapses to 1^{n+1} otherwise. Realized uniformly as
// output_i = x_i | !(B | x_{n+1}).
inline Circuit injectivity_gadget(const Formula& b, std::size_t cap = brute_force_cap()) {
  const std::uint32_t nv = b.var_count();
  if (nv < 1) throw std::invalid_argument("injectivity_gadget: formula needs a variable");
  if (nv + 1 > cap) throw cap_error("injectivity_gadget: cap exceeded");

  Formula guard = f_not(f_or(b, Formula::variable(nv + 1)));
  std::vector<Formula> outs;
  outs.reserve(nv + 1);
  for (std::uint32_t i = 1; i <= nv + 1; ++i)
    outs.push_back(f_or(Formula::variable(i), guard));
  return compile_formulas(outs, nv + 1);
}

// C_B with inputs (x-block, y-block, y_{n+1}) and outputs (y-block, y_{n+1}):
//   (y_1 | !(B | y_{n+1}), ..., y_n | !(B | y_{n+1}), y_{n+1} | !B).
// The x/y index sets partition B's variables; within each block the
// original index order is kept.
inline Circuit surjectivity_gadget(const Formula& b, std::vector<std::uint32_t> x_vars,
                                   std::vector<std::uint32_t> y_vars,
                                   std::size_t cap = brute_force_cap()) {
  const std::uint32_t vc = b.var_count();
  std::sort(x_vars.begin(), x_vars.end());
  std::sort(y_vars.begin(), y_vars.end());
  std::vector<std::uint8_t> role(vc + 1, 0);
  auto claim = [&](const std::vector<std::uint32_t>& vars, std::uint8_t tag) {
    for (std::uint32_t v : vars) {
      if (v < 1 || v > vc || role[v] != 0)
        throw std::invalid_argument("surjectivity_gadget: x/y sets must partition the variables");
      role[v] = tag;
    }
  };
  claim(x_vars, 1);
  claim(y_vars, 2);
  for (std::uint32_t v = 1; v <= vc; ++v)
    if (role[v] == 0)
      throw std::invalid_argument("surjectivity_gadget: x/y sets must partition the variables");
  if (x_vars.empty() || y_vars.empty())
    throw std::invalid_argument("surjectivity_gadget: both blocks must be nonempty");

  const std::uint32_t m = static_cast<std::uint32_t>(x_vars.size());
  const std::uint32_t n = static_cast<std::uint32_t>(y_vars.size());
  if (m + n + 1 > cap) throw cap_error("surjectivity_gadget: cap exceeded");

  std::vector<std::uint32_t> map(vc + 1, 0);
  for (std::uint32_t k = 0; k < m; ++k) map[x_vars[k]] = k + 1;
  for (std::uint32_t k = 0; k < n; ++k) map[y_vars[k]] = m + k + 1;
  Formula body = b.remap_variables(map, m + n + 1);

  Formula guard = f_not(f_or(body, Formula::variable(m + n + 1)));
  std::vector<Formula> outs;
  outs.reserve(n + 1);
  for (std::uint32_t j = 1; j <= n; ++j)
    outs.push_back(f_or(Formula::variable(m + j), guard));
  outs.push_back(f_or(Formula::variable(m + n + 1), f_not(body)));
  return compile_formulas(outs, m + n + 1);
}

}  // namespace cforge
