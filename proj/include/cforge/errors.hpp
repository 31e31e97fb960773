#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cforge {

// Input/output length does not match the declared arity.
class arity_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A brute-force operation was asked to run beyond the configured cap.
class cap_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_ = 0;
};

class validation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class family_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Exhaustive checks refuse inputs wider than this. Overridable per call site
// or globally through CIRCUIT_FORGE_CAP.
inline std::size_t brute_force_cap() {
  if (const char* env = std::getenv("CIRCUIT_FORGE_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 16;
}

}  // namespace cforge
