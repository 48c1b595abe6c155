#ifndef GDET_NUMBER_THEORY_HPP
#define GDET_NUMBER_THEORY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gdet/integer.hpp"

namespace gdet {

/// φ(n) by trial division. Throws std::invalid_argument for n = 0.
[[nodiscard]] std::uint64_t euler_phi(std::uint64_t n);

/// Positive divisors of n in increasing order.
[[nodiscard]] std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Deterministic Miller-Rabin for every 64-bit input.
[[nodiscard]] bool is_prime(std::uint64_t n) noexcept;

/// Primes in [lo, hi] by a segmented sieve.
[[nodiscard]] std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

[[nodiscard]] inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

/// p^e as a 128-bit value; throws std::overflow_error when it does not fit in 127 bits.
[[nodiscard]] u128 checked_power(std::uint64_t p, unsigned e);

[[nodiscard]] std::string u128_to_string(u128 v);

/// Z/mZ for m < 2^63, plain values with 128-bit products.
class Mod64Ring {
public:
  using value_type = std::uint64_t;

  explicit Mod64Ring(std::uint64_t modulus);

  [[nodiscard]] u128 modulus() const noexcept { return m_; }
  [[nodiscard]] value_type from_u64(std::uint64_t x) const noexcept { return x % m_; }
  [[nodiscard]] u128 lift(value_type a) const noexcept { return a; }
  [[nodiscard]] value_type one() const noexcept { return 1 % m_; }
  [[nodiscard]] value_type add(value_type a, value_type b) const noexcept {
    const std::uint64_t s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  [[nodiscard]] value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + m_ - b; }
  [[nodiscard]] value_type mul(value_type a, value_type b) const noexcept { return mulmod64(a, b, m_); }
  [[nodiscard]] value_type pow(value_type base, u128 e) const noexcept;

private:
  std::uint64_t m_;
};

/// Z/mZ for odd m < 2^127 in Montgomery form with R = 2^128.
class Mod128Ring {
public:
  using value_type = u128;

  explicit Mod128Ring(u128 modulus);

  [[nodiscard]] u128 modulus() const noexcept { return m_; }
  [[nodiscard]] value_type from_u64(std::uint64_t x) const noexcept { return to_mont(x % m_); }
  [[nodiscard]] value_type from_u128(u128 x) const noexcept { return to_mont(x % m_); }
  [[nodiscard]] u128 lift(value_type a) const noexcept { return redc(a, 0); }
  [[nodiscard]] value_type one() const noexcept { return r1_; }
  [[nodiscard]] value_type add(value_type a, value_type b) const noexcept {
    const u128 s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  [[nodiscard]] value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + m_ - b; }
  [[nodiscard]] value_type mul(value_type a, value_type b) const noexcept;
  [[nodiscard]] value_type pow(value_type base, u128 e) const noexcept;

private:
  [[nodiscard]] value_type to_mont(u128 x) const noexcept { return mul(x, r2_); }
  /// (hi * 2^128 + lo) / R mod m, for inputs below m * R.
  [[nodiscard]] u128 redc(u128 lo, u128 hi) const noexcept;

  u128 m_;
  u128 m_neg_inv_;       // -m^{-1} mod R
  u128 r1_;              // R mod m
  u128 r2_;              // R^2 mod m
};

}  // namespace gdet

#endif  // GDET_NUMBER_THEORY_HPP
