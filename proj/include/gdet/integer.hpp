#ifndef GDET_INTEGER_HPP
#define GDET_INTEGER_HPP

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gdet {

using BigInt = mpz_class;
using i128 = __int128;
using u128 = unsigned __int128;

/// Arbitrary-precision signed integer with an inline 128-bit fast path.
///
/// A value is stored inline as two 64-bit words unless its high word would
/// equal the reserved tag (INT64_MIN), in which case the low word holds a
/// pointer to a heap mpz. Values that fit inline are never kept on the heap,
/// so bitwise equality of two inline values is value equality.
///
/// sizeof(Integer) == 16, which keeps a polynomial term at 32 bytes.
class Integer {
public:
  Integer() noexcept = default;

  template <std::integral T>
  Integer(T v) noexcept {  // NOLINT(google-explicit-constructor)
    set_small(static_cast<i128>(v));
  }

  explicit Integer(const BigInt& v);
  explicit Integer(i128 v) { set_small(v); }

  Integer(const Integer& other);
  Integer(Integer&& other) noexcept : lo_(other.lo_), hi_(other.hi_) {
    other.lo_ = 0;
    other.hi_ = 0;
  }
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&& other) noexcept;
  ~Integer() { release(); }

  static Integer from_string(std::string_view text);

  /// Builds a value from a sign flag and little-endian magnitude bytes.
  static Integer from_magnitude(bool negative, std::span<const std::uint8_t> magnitude);

  [[nodiscard]] bool is_zero() const noexcept { return lo_ == 0 && hi_ == 0; }
  [[nodiscard]] bool is_inline() const noexcept { return hi_ != kBigTag; }
  [[nodiscard]] int sign() const noexcept;
  [[nodiscard]] std::size_t bit_length() const;

  [[nodiscard]] BigInt to_big() const;
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] bool fits_int64() const noexcept;
  [[nodiscard]] std::int64_t to_int64() const;

  /// Residue in [0, m) for m > 0.
  [[nodiscard]] std::uint64_t mod_u64(std::uint64_t m) const;

  /// Little-endian magnitude with no trailing zero bytes (empty for zero).
  [[nodiscard]] std::vector<std::uint8_t> magnitude_bytes() const;

  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);
  [[nodiscard]] Integer operator-() const;

  friend Integer operator+(Integer lhs, const Integer& rhs) { return lhs += rhs; }
  friend Integer operator-(Integer lhs, const Integer& rhs) { return lhs -= rhs; }
  friend Integer operator*(Integer lhs, const Integer& rhs) { return lhs *= rhs; }

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  /// acc += a * b
  friend void mul_add(Integer& acc, const Integer& a, const Integer& b);
  /// acc -= a * b
  friend void mul_sub(Integer& acc, const Integer& a, const Integer& b);

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

private:
  static constexpr std::int64_t kBigTag = INT64_MIN;

  [[nodiscard]] i128 small() const noexcept {
    return static_cast<i128>((static_cast<u128>(static_cast<std::uint64_t>(hi_)) << 64) | lo_);
  }
  [[nodiscard]] mpz_ptr big() const noexcept { return reinterpret_cast<mpz_ptr>(lo_); }

  void set_small(i128 v);
  void assign_big(mpz_srcptr v);
  void release() noexcept;
  mpz_ptr promote();
  void normalize();
  void load_into(mpz_ptr out) const;

  std::uint64_t lo_ = 0;
  std::int64_t hi_ = 0;
};

[[nodiscard]] inline bool is_zero(const Integer& v) noexcept { return v.is_zero(); }

[[nodiscard]] Integer pow(const Integer& base, unsigned exponent);

}  // namespace gdet

#endif  // GDET_INTEGER_HPP
