#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace textfs {

// Binary feature-selection vector: bit j set means term j is selected.
class FeatureMask {
 public:
  FeatureMask() = default;
  explicit FeatureMask(std::size_t t, bool value = false) : bits_(t, value ? 1 : 0) {}
  explicit FeatureMask(std::vector<std::uint8_t> bits);

  // Parses "0110..." strings.
  static FeatureMask from_string(std::string_view s);
  std::string to_string() const;

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool test(std::size_t j) const { return bits_[j] != 0; }
  void set(std::size_t j, bool v = true) { bits_[j] = v ? 1 : 0; }
  void flip(std::size_t j) { bits_[j] ^= 1; }
  std::size_t popcount() const;
  bool none() const { return popcount() == 0; }

  std::vector<std::size_t> selected() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  FeatureMask& operator|=(const FeatureMask& other);
  friend bool operator==(const FeatureMask&, const FeatureMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace textfs
