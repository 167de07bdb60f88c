#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ringlab/core.hpp"

namespace ringlab {

/// Dense bit-mask over the element ids of one ring. Subrings, ideals and
/// subgroups are all SubsetMasks; what the bits mean depends on the caller.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static SubsetMask full(std::size_t size) {
    SubsetMask m(size);
    for (std::size_t i = 0; i < size; ++i) m.set(static_cast<Id>(i));
    return m;
  }

  template <class Range>
  static SubsetMask of(std::size_t size, const Range& ids) {
    SubsetMask m(size);
    for (auto id : ids) m.set(static_cast<Id>(id));
    return m;
  }

  std::size_t size() const noexcept { return size_; }

  bool test(Id i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(Id i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(Id i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  /// Sets bit i, returns true if it was previously clear.
  bool insert(Id i) noexcept {
    std::uint64_t& w = words_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (w & bit) return false;
    w |= bit;
    return true;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  SubsetMask& operator|=(const SubsetMask& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  SubsetMask& operator&=(const SubsetMask& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }

  SubsetMask complement() const {
    SubsetMask m(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) m.words_[i] = ~words_[i];
    m.trim();
    return m;
  }

  bool is_subset_of(const SubsetMask& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  /// Ascending list of set ids.
  std::vector<Id> elements() const {
    std::vector<Id> out;
    out.reserve(count());
    for_each([&](Id i) { out.push_back(i); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<Id>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  /// First set id, or size() when empty.
  std::size_t first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return size_;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull ^ size_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

  /// Total order used for deterministic report ordering: by popcount, then by
  /// the smallest id on which the two masks differ (the mask holding it first).
  friend bool canonical_less(const SubsetMask& a, const SubsetMask& b) {
    const auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      const std::uint64_t diff = a.words_[i] ^ b.words_[i];
      if (diff) return (a.words_[i] >> std::countr_zero(diff)) & 1u;
    }
    return false;
  }

 private:
  void trim() {
    if (size_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SubsetMaskHash {
  std::size_t operator()(const SubsetMask& m) const noexcept { return m.hash(); }
};

}  // namespace ringlab
