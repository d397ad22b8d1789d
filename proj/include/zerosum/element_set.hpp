#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace zerosum {

/// Fixed-size bitset over the lexicographic element indices of a group.
class ElementSet {
public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return universe_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_)
      n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w)
        return false;
    return true;
  }

  template <typename F> void for_each(F &&f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        auto b = static_cast<std::size_t>(std::countr_zero(bits));
        f(w * 64 + b);
        bits &= bits - 1;
      }
    }
  }

  /// dst <- src | (src + g) | {g}, where `shift[x]` is the index of x + g.
  /// One subset-sum DP step for appending the term g; dst is reused storage.
  static void extend(const ElementSet &src, ElementSet &dst,
                     std::span<const std::uint32_t> shift, std::size_t g) {
    dst.universe_ = src.universe_;
    dst.words_.assign(src.words_.begin(), src.words_.end());
    src.for_each([&](std::size_t x) { dst.set(shift[x]); });
    dst.set(g);
  }

  bool is_subset_of(const ElementSet &other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~other.words_[w])
        return false;
    return true;
  }

  friend bool operator==(const ElementSet &, const ElementSet &) = default;

private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace zerosum
