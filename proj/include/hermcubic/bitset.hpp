#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace hermcubic {

// Fixed-size dense bitset with the handful of operations the counting paths need.
class DenseBitset {
 public:
  DenseBitset() = default;
  explicit DenseBitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const noexcept { return bits_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const std::uint64_t* words() const noexcept { return words_.data(); }

  void set(std::size_t i) noexcept { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  friend std::size_t and_count(const DenseBitset& a, const DenseBitset& b) noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
    return c;
  }

  // |a ∪ b ∪ c|
  friend std::size_t union_count(const DenseBitset& a, const DenseBitset& b, const DenseBitset& c) noexcept {
    std::size_t r = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      r += static_cast<std::size_t>(std::popcount(a.words_[i] | b.words_[i] | c.words_[i]));
    return r;
  }

  friend bool operator==(const DenseBitset&, const DenseBitset&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace hermcubic
