#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "cforge/circuit.hpp"
#include "cforge/codec.hpp"
#include "cforge/enumerate.hpp"
#include "cforge/evaluate.hpp"
#include "cforge/inverse.hpp"

namespace cforge {

struct MinInverse {
  Circuit circuit;
  std::uint32_t size = 0;
};

// Smallest circuit whose table is a semi-inverse of table(C). Candidates
// come from the ordered enumeration, so the first hit is the minimum.
inline std::optional<MinInverse> min_inverse_circuit(const Circuit& c,
                                                     std::uint32_t inverse_size_cap,
                                                     std::size_t cap = brute_force_cap()) {
  const FunctionTable target = function_table(c, cap);
  for (const Circuit& cand : enumerate_circuits(c.n, c.m, inverse_size_cap)) {
    if (is_semi_inverse(target, function_table(cand, cap)))
      return MinInverse{cand, static_cast<std::uint32_t>(circuit_size(cand))};
  }
  return std::nullopt;
}

struct HardnessRecord {
  std::string canonical_id;  // canonical code, hex
  std::uint32_t circuit_size = 0;
  std::uint32_t min_inverse_size = 0;
  bool surjective = false;
  bool injective = false;
  bool all_found_inverses_injective = true;  // meaningful for surjective rows
};

struct HardnessProfile {
  std::uint32_t m = 0, n = 0;
  std::uint32_t circuit_size_cap = 0, inverse_size_cap = 0;
  std::vector<HardnessRecord> records;
  double worst_ratio = 0.0;  // max of min_inverse_size / circuit_size
};

inline std::string bits_to_hex(const BitString& bits) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  std::uint32_t acc = 0, count = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    acc = (acc << 1) | bits[i];
    if (++count == 4) {
      s.push_back(digits[acc]);
      acc = 0;
      count = 0;
    }
  }
  if (count > 0) s.push_back(digits[acc << (4 - count)]);
  return s;
}

// Exhaustive inversion-hardness survey: every canonical circuit with the
// given arities gets its minimal verified inverse circuit. Sharding over
// jobs only splits the per-circuit work; the output order is fixed.
inline HardnessProfile hardness_profile(std::uint32_t m, std::uint32_t n,
                                        std::uint32_t circuit_size_cap,
                                        std::uint32_t inverse_size_cap, unsigned jobs = 1,
                                        std::size_t cap = brute_force_cap()) {
  HardnessProfile profile;
  profile.m = m;
  profile.n = n;
  profile.circuit_size_cap = circuit_size_cap;
  profile.inverse_size_cap = inverse_size_cap;

  const std::vector<Circuit> circuits = enumerate_circuits(m, n, circuit_size_cap);
  const std::vector<Circuit> candidates = enumerate_circuits(n, m, inverse_size_cap);
  std::vector<FunctionTable> candidate_tables;
  candidate_tables.reserve(candidates.size());
  for (const Circuit& cand : candidates) candidate_tables.push_back(function_table(cand, cap));

  profile.records.assign(circuits.size(), {});
  std::vector<std::uint8_t> failed(circuits.size(), 0);

  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < circuits.size(); i += step) {
      const Circuit& c = circuits[i];
      HardnessRecord rec;
      rec.canonical_id = bits_to_hex(encode(c));
      rec.circuit_size = static_cast<std::uint32_t>(circuit_size(c));
      const FunctionTable table = function_table(c, cap);
      rec.surjective = table.surjective();
      rec.injective = table.injective_on_domain();
      bool found = false;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (!is_semi_inverse(table, candidate_tables[k])) continue;
        if (!found) {
          rec.min_inverse_size = static_cast<std::uint32_t>(circuit_size(candidates[k]));
          found = true;
        }
        if (rec.surjective && !candidate_tables[k].injective_on_domain())
          rec.all_found_inverses_injective = false;
      }
      if (!found) failed[i] = 1;
      profile.records[i] = std::move(rec);
    }
  };

  if (jobs <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < circuits.size(); ++i)
    if (failed[i])
      throw cap_error("hardness_profile: no semi-inverse circuit within size cap " +
                      std::to_string(inverse_size_cap));

  for (const HardnessRecord& rec : profile.records) {
    const double ratio = static_cast<double>(rec.min_inverse_size) / rec.circuit_size;
    if (ratio > profile.worst_ratio) profile.worst_ratio = ratio;
  }
  return profile;
}

inline void write_profile_csv(std::ostream& out, const HardnessProfile& profile) {
  out << "m,n,circuit_size,circuit_canonical_id,min_inverse_size,is_surjective,is_injective\n";
  for (const HardnessRecord& rec : profile.records) {
    out << profile.m << ',' << profile.n << ',' << rec.circuit_size << ',' << rec.canonical_id
        << ',' << rec.min_inverse_size << ',' << (rec.surjective ? "true" : "false") << ','
        << (rec.injective ? "true" : "false") << "\n";
  }
}

}  // namespace cforge
