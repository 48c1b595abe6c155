#ifndef GDET_MODP_HPP
#define GDET_MODP_HPP

#include <cstdint>
#include <ostream>

#include "gdet/integer.hpp"

namespace gdet {

/// Element of Z/qZ with q = 2^61 - 1, always held in [0, q).
///
/// Used as the ModPrime coefficient ring: term counts derived from it are
/// Monte Carlo (a nonzero integer coefficient divisible by q would vanish).
struct ModP61 {
  static constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;

  std::uint64_t value = 0;

  constexpr ModP61() noexcept = default;
  constexpr explicit ModP61(std::uint64_t v) noexcept : value(reduce(v)) {}
  static ModP61 from_signed(std::int64_t v) noexcept {
    const auto mag = static_cast<std::uint64_t>(v < 0 ? -(v + 1) : v) + (v < 0 ? 1 : 0);
    const ModP61 m(mag);
    return v < 0 ? -m : m;
  }
  static ModP61 from_integer(const Integer& v) { return ModP61(v.mod_u64(kModulus)); }

  static constexpr std::uint64_t reduce(std::uint64_t v) noexcept {
    v = (v & kModulus) + (v >> 61);
    return v >= kModulus ? v - kModulus : v;
  }
  static constexpr std::uint64_t reduce128(u128 v) noexcept {
    const std::uint64_t lo = static_cast<std::uint64_t>(v) & kModulus;
    const std::uint64_t hi = static_cast<std::uint64_t>(v >> 61);
    return reduce(lo + reduce(hi));
  }

  constexpr ModP61& operator+=(ModP61 rhs) noexcept {
    value += rhs.value;
    if (value >= kModulus) value -= kModulus;
    return *this;
  }
  constexpr ModP61& operator-=(ModP61 rhs) noexcept {
    value = value >= rhs.value ? value - rhs.value : value + kModulus - rhs.value;
    return *this;
  }
  constexpr ModP61& operator*=(ModP61 rhs) noexcept {
    value = reduce128(static_cast<u128>(value) * rhs.value);
    return *this;
  }
  constexpr ModP61 operator-() const noexcept {
    ModP61 r;
    r.value = value == 0 ? 0 : kModulus - value;
    return r;
  }
  friend constexpr ModP61 operator+(ModP61 a, ModP61 b) noexcept { return a += b; }
  friend constexpr ModP61 operator-(ModP61 a, ModP61 b) noexcept { return a -= b; }
  friend constexpr ModP61 operator*(ModP61 a, ModP61 b) noexcept { return a *= b; }
  friend constexpr bool operator==(ModP61 a, ModP61 b) noexcept = default;

  friend constexpr void mul_add(ModP61& acc, ModP61 a, ModP61 b) noexcept { acc += a * b; }
  friend constexpr void mul_sub(ModP61& acc, ModP61 a, ModP61 b) noexcept { acc -= a * b; }
  friend std::ostream& operator<<(std::ostream& os, ModP61 v) { return os << v.value; }
};

[[nodiscard]] constexpr bool is_zero(ModP61 v) noexcept { return v.value == 0; }

/// Conversion from the exact ring, specialised per coefficient type.
template <class Scalar>
Scalar scalar_from_integer(const Integer& v);

template <>
inline Integer scalar_from_integer<Integer>(const Integer& v) {
  return v;
}

template <>
inline ModP61 scalar_from_integer<ModP61>(const Integer& v) {
  return ModP61::from_integer(v);
}

/// Whether counts computed over this coefficient ring are Monte Carlo.
template <class Scalar>
inline constexpr bool is_monte_carlo_v = false;
template <>
inline constexpr bool is_monte_carlo_v<ModP61> = true;

}  // namespace gdet

#endif  // GDET_MODP_HPP
