#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cforge {

// Finite sequence over {0,1}. Position 0 holds the leading bit x1, so the
// integer form produced by to_index() orders exactly like the text form.
class BitString {
public:
  BitString() = default;

  explicit BitString(std::string_view text) {
    bits_.reserve(text.size());
    for (char ch : text) {
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("bitstring: expected characters 0/1");
      bits_.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
  }

  static BitString zeros(std::size_t width) {
    BitString b;
    b.bits_.assign(width, 0);
    return b;
  }

  static BitString ones(std::size_t width) {
    BitString b;
    b.bits_.assign(width, 1);
    return b;
  }

  static BitString from_index(std::uint64_t value, std::size_t width) {
    BitString b;
    b.bits_.resize(width);
    for (std::size_t i = 0; i < width; ++i)
      b.bits_[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
    return b;
  }

  std::uint64_t to_index() const {
    if (bits_.size() > 63)
      throw std::length_error("bitstring: too wide for an index");
    std::uint64_t v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool bit) { bits_[i] = bit ? 1 : 0; }
  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }

  BitString prefix(std::size_t count) const {
    BitString b;
    b.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(count));
    return b;
  }

  BitString suffix_from(std::size_t start) const {
    BitString b;
    b.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(start), bits_.end());
    return b;
  }

  friend BitString operator+(const BitString& a, const BitString& b) {
    BitString r = a;
    r.bits_.insert(r.bits_.end(), b.bits_.begin(), b.bits_.end());
    return r;
  }

  std::string str() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  auto operator<=>(const BitString&) const = default;

private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace cforge
