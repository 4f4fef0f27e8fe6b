#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace f2lab {

/// Fixed-capacity packed bit vector (512 bits). Every point of a graph space
/// and every index subset used by the polynomial machinery fits in one value,
/// so these are passed around by value without allocation.
class Bits {
 public:
  static constexpr std::size_t kWords = 8;
  static constexpr std::size_t kCapacity = 64 * kWords;

  constexpr Bits() = default;

  static constexpr Bits from_word(std::uint64_t w) {
    Bits b;
    b.w_[0] = w;
    return b;
  }

  /// All bits in [0, count) set.
  static constexpr Bits prefix(std::size_t count) {
    Bits b;
    for (std::size_t k = 0; k < kWords && count > 0; ++k) {
      if (count >= 64) {
        b.w_[k] = ~std::uint64_t{0};
        count -= 64;
      } else {
        b.w_[k] = (std::uint64_t{1} << count) - 1;
        count = 0;
      }
    }
    return b;
  }

  constexpr bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  constexpr void set(std::size_t i, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  constexpr void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  constexpr std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  constexpr bool none() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  constexpr bool any() const { return !none(); }

  /// Highest set bit plus one (0 for the empty set).
  constexpr std::size_t bit_width() const {
    for (std::size_t k = kWords; k-- > 0;)
      if (w_[k]) return 64 * k + static_cast<std::size_t>(std::bit_width(w_[k]));
    return 0;
  }

  constexpr bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < kWords; ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  constexpr bool intersects(const Bits& o) const {
    for (std::size_t k = 0; k < kWords; ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  constexpr std::uint64_t word(std::size_t k) const { return w_[k]; }
  constexpr void set_word(std::size_t k, std::uint64_t v) { w_[k] = v; }

  /// Numeric value when the vector fits in one word; this is the table
  /// position of the point.
  constexpr std::uint64_t to_index() const { return w_[0]; }

  constexpr Bits& operator^=(const Bits& o) {
    for (std::size_t k = 0; k < kWords; ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  constexpr Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < kWords; ++k) w_[k] &= o.w_[k];
    return *this;
  }
  constexpr Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < kWords; ++k) w_[k] |= o.w_[k];
    return *this;
  }
  /// this & ~o
  constexpr Bits& subtract(const Bits& o) {
    for (std::size_t k = 0; k < kWords; ++k) w_[k] &= ~o.w_[k];
    return *this;
  }

  friend constexpr Bits operator^(Bits a, const Bits& b) { return a ^= b; }
  friend constexpr Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend constexpr Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend constexpr Bits minus(Bits a, const Bits& b) { return a.subtract(b); }

  template <class F>
  constexpr void for_each_set(F&& f) const {
    for (std::size_t k = 0; k < kWords; ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        const int t = std::countr_zero(w);
        f(64 * k + static_cast<std::size_t>(t));
        w &= w - 1;
      }
    }
  }

  friend constexpr bool operator==(const Bits&, const Bits&) = default;

  /// Numeric order: the vector read as an unsigned integer, bit 0 least
  /// significant. Agrees with table-position order.
  friend constexpr std::strong_ordering operator<=>(const Bits& a, const Bits& b) {
    for (std::size_t k = kWords; k-- > 0;)
      if (a.w_[k] != b.w_[k]) return a.w_[k] <=> b.w_[k];
    return std::strong_ordering::equal;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 0;
    for (auto w : w_) h = h * 0x9E3779B97F4A7C15ull ^ std::hash<std::uint64_t>{}(w);
    return h;
  }

 private:
  std::array<std::uint64_t, kWords> w_{};
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept { return b.hash(); }
};

}  // namespace f2lab
