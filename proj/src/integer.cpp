#include "gdet/integer.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace gdet {

namespace {

u128 magnitude_of(i128 v) {
  return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
}

void mpz_set_i128(mpz_ptr out, i128 v) {
  const u128 mag = magnitude_of(v);
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(mag),
                                  static_cast<std::uint64_t>(mag >> 64)};
  mpz_import(out, 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (v < 0) mpz_neg(out, out);
}

// Returns true and writes *out when |v| < 2^127.
bool mpz_get_i128(mpz_srcptr v, i128* out) {
  if (mpz_sizeinbase(v, 2) > 127) return false;
  std::uint64_t words[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(words, &count, -1, sizeof(std::uint64_t), 0, 0, v);
  const u128 mag = (static_cast<u128>(words[1]) << 64) | words[0];
  const i128 s = static_cast<i128>(mag);
  *out = mpz_sgn(v) < 0 ? -s : s;
  return true;
}

}  // namespace

Integer::Integer(const BigInt& v) { assign_big(v.get_mpz_t()); }

Integer::Integer(const Integer& other) : lo_(other.lo_), hi_(other.hi_) {
  if (!other.is_inline()) {
    auto* p = new __mpz_struct;
    mpz_init_set(p, other.big());
    lo_ = reinterpret_cast<std::uint64_t>(p);
  }
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  if (other.is_inline()) {
    release();
    lo_ = other.lo_;
    hi_ = other.hi_;
  } else if (!is_inline()) {
    mpz_set(big(), other.big());
  } else {
    auto* p = new __mpz_struct;
    mpz_init_set(p, other.big());
    lo_ = reinterpret_cast<std::uint64_t>(p);
    hi_ = kBigTag;
  }
  return *this;
}

Integer& Integer::operator=(Integer&& other) noexcept {
  if (this != &other) {
    release();
    lo_ = other.lo_;
    hi_ = other.hi_;
    other.lo_ = 0;
    other.hi_ = 0;
  }
  return *this;
}

void Integer::release() noexcept {
  if (!is_inline()) {
    mpz_clear(big());
    delete big();
    lo_ = 0;
    hi_ = 0;
  }
}

void Integer::set_small(i128 v) {
  const auto u = static_cast<u128>(v);
  const auto hi = static_cast<std::int64_t>(static_cast<std::uint64_t>(u >> 64));
  if (hi == kBigTag) {
    release();
    auto* p = new __mpz_struct;
    mpz_init(p);
    mpz_set_i128(p, v);
    lo_ = reinterpret_cast<std::uint64_t>(p);
    hi_ = kBigTag;
    return;
  }
  release();
  lo_ = static_cast<std::uint64_t>(u);
  hi_ = hi;
}

void Integer::assign_big(mpz_srcptr v) {
  i128 s = 0;
  if (mpz_get_i128(v, &s)) {
    const auto hi = static_cast<std::int64_t>(static_cast<std::uint64_t>(static_cast<u128>(s) >> 64));
    if (hi != kBigTag) {
      release();
      lo_ = static_cast<std::uint64_t>(static_cast<u128>(s));
      hi_ = hi;
      return;
    }
  }
  if (is_inline()) {
    auto* p = new __mpz_struct;
    mpz_init_set(p, v);
    lo_ = reinterpret_cast<std::uint64_t>(p);
    hi_ = kBigTag;
  } else {
    mpz_set(big(), v);
  }
}

mpz_ptr Integer::promote() {
  if (is_inline()) {
    const i128 v = small();
    auto* p = new __mpz_struct;
    mpz_init(p);
    mpz_set_i128(p, v);
    lo_ = reinterpret_cast<std::uint64_t>(p);
    hi_ = kBigTag;
  }
  return big();
}

void Integer::normalize() {
  if (is_inline()) return;
  i128 s = 0;
  if (!mpz_get_i128(big(), &s)) return;
  const auto hi = static_cast<std::int64_t>(static_cast<std::uint64_t>(static_cast<u128>(s) >> 64));
  if (hi == kBigTag) return;
  release();
  lo_ = static_cast<std::uint64_t>(static_cast<u128>(s));
  hi_ = hi;
}

void Integer::load_into(mpz_ptr out) const {
  if (is_inline()) {
    mpz_set_i128(out, small());
  } else {
    mpz_set(out, big());
  }
}

Integer Integer::from_string(std::string_view text) {
  BigInt v;
  if (v.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("Integer: not a decimal integer: " + std::string(text));
  }
  return Integer(v);
}

Integer Integer::from_magnitude(bool negative, std::span<const std::uint8_t> magnitude) {
  BigInt v;
  if (!magnitude.empty()) {
    mpz_import(v.get_mpz_t(), magnitude.size(), -1, 1, 0, 0, magnitude.data());
  }
  if (negative) v = -v;
  return Integer(v);
}

int Integer::sign() const noexcept {
  if (!is_inline()) return mpz_sgn(big());
  if (hi_ < 0) return -1;
  return is_zero() ? 0 : 1;
}

std::size_t Integer::bit_length() const {
  if (!is_inline()) return mpz_sizeinbase(big(), 2);
  u128 m = magnitude_of(small());
  std::size_t bits = 0;
  while (m != 0) {
    ++bits;
    m >>= 1;
  }
  return bits;
}

BigInt Integer::to_big() const {
  BigInt out;
  load_into(out.get_mpz_t());
  return out;
}

std::string Integer::to_string() const {
  if (is_inline()) {
    i128 v = small();
    if (v == 0) return "0";
    const bool neg = v < 0;
    u128 m = magnitude_of(v);
    std::string digits;
    while (m != 0) {
      digits.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
      m /= 10;
    }
    if (neg) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
  }
  return to_big().get_str();
}

bool Integer::fits_int64() const noexcept {
  if (!is_inline()) return false;
  const i128 v = small();
  return v >= INT64_MIN && v <= INT64_MAX;
}

std::int64_t Integer::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("Integer: value does not fit in int64");
  return static_cast<std::int64_t>(small());
}

std::uint64_t Integer::mod_u64(std::uint64_t m) const {
  if (m == 0) throw std::domain_error("Integer::mod_u64: zero modulus");
  if (is_inline()) {
    const i128 v = small();
    i128 r = v % static_cast<i128>(m);
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
  }
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(big(), m);
}

std::vector<std::uint8_t> Integer::magnitude_bytes() const {
  std::vector<std::uint8_t> out;
  if (is_inline()) {
    u128 m = magnitude_of(small());
    while (m != 0) {
      out.push_back(static_cast<std::uint8_t>(m & 0xFF));
      m >>= 8;
    }
    return out;
  }
  out.resize((mpz_sizeinbase(big(), 2) + 7) / 8);
  std::size_t count = 0;
  mpz_export(out.data(), &count, -1, 1, 0, 0, big());
  out.resize(count);
  return out;
}

Integer& Integer::operator+=(const Integer& rhs) {
  if (is_inline() && rhs.is_inline()) {
    i128 r = 0;
    if (!__builtin_add_overflow(small(), rhs.small(), &r)) {
      set_small(r);
      return *this;
    }
  }
  BigInt b;
  rhs.load_into(b.get_mpz_t());
  mpz_ptr a = promote();
  mpz_add(a, a, b.get_mpz_t());
  normalize();
  return *this;
}

Integer& Integer::operator-=(const Integer& rhs) {
  if (is_inline() && rhs.is_inline()) {
    i128 r = 0;
    if (!__builtin_sub_overflow(small(), rhs.small(), &r)) {
      set_small(r);
      return *this;
    }
  }
  BigInt b;
  rhs.load_into(b.get_mpz_t());
  mpz_ptr a = promote();
  mpz_sub(a, a, b.get_mpz_t());
  normalize();
  return *this;
}

Integer& Integer::operator*=(const Integer& rhs) {
  if (is_inline() && rhs.is_inline()) {
    i128 r = 0;
    if (!__builtin_mul_overflow(small(), rhs.small(), &r)) {
      set_small(r);
      return *this;
    }
  }
  BigInt b;
  rhs.load_into(b.get_mpz_t());
  mpz_ptr a = promote();
  mpz_mul(a, a, b.get_mpz_t());
  normalize();
  return *this;
}

Integer Integer::operator-() const {
  Integer out;
  return out -= *this;
}

bool operator==(const Integer& a, const Integer& b) {
  if (a.is_inline() != b.is_inline()) return false;
  if (a.is_inline()) return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  return mpz_cmp(a.big(), b.big()) == 0;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (a.is_inline() && b.is_inline()) return a.small() <=> b.small();
  const int c = mpz_cmp(a.to_big().get_mpz_t(), b.to_big().get_mpz_t());
  return c <=> 0;
}

void mul_add(Integer& acc, const Integer& a, const Integer& b) {
  if (acc.is_inline() && a.is_inline() && b.is_inline()) {
    i128 p = 0;
    i128 r = 0;
    if (!__builtin_mul_overflow(a.small(), b.small(), &p) &&
        !__builtin_add_overflow(acc.small(), p, &r)) {
      acc.set_small(r);
      return;
    }
  }
  BigInt x;
  BigInt y;
  a.load_into(x.get_mpz_t());
  b.load_into(y.get_mpz_t());
  mpz_ptr t = acc.promote();
  mpz_addmul(t, x.get_mpz_t(), y.get_mpz_t());
  acc.normalize();
}

void mul_sub(Integer& acc, const Integer& a, const Integer& b) {
  if (acc.is_inline() && a.is_inline() && b.is_inline()) {
    i128 p = 0;
    i128 r = 0;
    if (!__builtin_mul_overflow(a.small(), b.small(), &p) &&
        !__builtin_sub_overflow(acc.small(), p, &r)) {
      acc.set_small(r);
      return;
    }
  }
  BigInt x;
  BigInt y;
  a.load_into(x.get_mpz_t());
  b.load_into(y.get_mpz_t());
  mpz_ptr t = acc.promote();
  mpz_submul(t, x.get_mpz_t(), y.get_mpz_t());
  acc.normalize();
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

Integer pow(const Integer& base, unsigned exponent) {
  Integer result(1);
  Integer b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

}  // namespace gdet
