#include "textfs/mask.hpp"

#include <algorithm>
#include <stdexcept>

namespace textfs {

FeatureMask::FeatureMask(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_)
    if (b > 1) throw std::invalid_argument("FeatureMask: bits must be 0 or 1");
}

FeatureMask FeatureMask::from_string(std::string_view s) {
  FeatureMask m(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] == '1')
      m.bits_[j] = 1;
    else if (s[j] != '0')
      throw std::invalid_argument("FeatureMask: expected only '0'/'1' characters");
  }
  return m;
}

std::string FeatureMask::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t j = 0; j < bits_.size(); ++j)
    if (bits_[j]) s[j] = '1';
  return s;
}

std::size_t FeatureMask::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> FeatureMask::selected() const {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < bits_.size(); ++j)
    if (bits_[j]) idx.push_back(j);
  return idx;
}

FeatureMask& FeatureMask::operator|=(const FeatureMask& other) {
  if (other.size() != size()) throw std::invalid_argument("FeatureMask: OR of masks with different lengths");
  for (std::size_t j = 0; j < bits_.size(); ++j) bits_[j] |= other.bits_[j];
  return *this;
}

}  // namespace textfs
