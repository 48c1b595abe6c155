#ifndef GDET_MONOMIAL_HPP
#define GDET_MONOMIAL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace gdet {

/// Exponent vector over at most 16 variables, one byte per variable.
///
/// Variable 0 occupies the most significant byte of `hi`, variable 8 the most
/// significant byte of `lo`, so comparing (hi, lo) as unsigned integers is
/// lexicographic order on exponent vectors. Bytes past n_vars stay zero.
struct Monomial {
  static constexpr std::size_t kMaxVars = 16;

  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  [[nodiscard]] static constexpr unsigned shift_of(std::size_t var) noexcept {
    return static_cast<unsigned>((7 - (var & 7)) * 8);
  }

  [[nodiscard]] constexpr unsigned exponent(std::size_t var) const noexcept {
    const std::uint64_t word = var < 8 ? hi : lo;
    return static_cast<unsigned>((word >> shift_of(var)) & 0xFF);
  }

  constexpr void set_exponent(std::size_t var, unsigned value) {
    if (var >= kMaxVars) throw std::out_of_range("Monomial: variable index out of range");
    if (value > 255) throw std::out_of_range("Monomial: exponent exceeds 255");
    std::uint64_t& word = var < 8 ? hi : lo;
    const unsigned s = shift_of(var);
    word = (word & ~(std::uint64_t{0xFF} << s)) | (std::uint64_t{value} << s);
  }

  [[nodiscard]] static constexpr Monomial unit(std::size_t var) {
    Monomial m;
    m.set_exponent(var, 1);
    return m;
  }

  [[nodiscard]] constexpr unsigned degree() const noexcept {
    unsigned d = 0;
    for (std::size_t v = 0; v < kMaxVars; ++v) d += exponent(v);
    return d;
  }

  /// First two exponents packed as (e0 << 8) | e1; the multiplication bucket key.
  [[nodiscard]] constexpr std::uint16_t lead_key() const noexcept {
    return static_cast<std::uint16_t>(hi >> 48);
  }

  /// Exponent-wise sum. Callers guarantee no exponent exceeds 255.
  friend constexpr Monomial operator*(Monomial a, Monomial b) noexcept {
    return Monomial{a.hi + b.hi, a.lo + b.lo};
  }

  friend constexpr bool operator==(Monomial, Monomial) noexcept = default;
  friend constexpr std::strong_ordering operator<=>(Monomial a, Monomial b) noexcept {
    if (a.hi != b.hi) return a.hi <=> b.hi;
    return a.lo <=> b.lo;
  }
};

struct MonomialHash {
  std::size_t operator()(Monomial m) const noexcept {
    std::uint64_t h = m.hi * 0x9E3779B97F4A7C15ULL ^ (m.lo + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 32;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace gdet

#endif  // GDET_MONOMIAL_HPP
