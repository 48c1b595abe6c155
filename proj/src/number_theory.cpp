#include "gdet/number_theory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace gdet {

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
  std::uint64_t result = n;
  for (std::uint64_t q = 2; q <= n / q; ++q) {
    if (n % q != 0) continue;
    while (n % q == 0) n /= q;
    result -= result / q;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

namespace {

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

std::pair<u128, u128> mul_full(u128 a, u128 b) noexcept {
  const std::uint64_t a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
  const std::uint64_t b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
  const u128 p00 = static_cast<u128>(a0) * b0;
  const u128 p01 = static_cast<u128>(a0) * b1;
  const u128 p10 = static_cast<u128>(a1) * b0;
  const u128 p11 = static_cast<u128>(a1) * b1;
  const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
  const u128 lo = static_cast<std::uint64_t>(p00) | (mid << 64);
  const u128 hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  return {lo, hi};
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t q : kBases) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  lo = std::max<std::uint64_t>(lo, 2);
  if (hi < lo) return out;
  if (hi > (std::uint64_t{1} << 40)) throw std::invalid_argument("primes_in_range: upper bound too large");
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }
  constexpr std::uint64_t kSegment = 1 << 20;
  std::vector<char> seg;
  for (std::uint64_t start = lo; start <= hi; start += kSegment) {
    const std::uint64_t end = std::min(hi, start + kSegment - 1);
    seg.assign(end - start + 1, 1);
    for (std::uint64_t q : base) {
      if (q * q > end) break;
      std::uint64_t first = std::max(q * q, (start + q - 1) / q * q);
      for (std::uint64_t j = first; j <= end; j += q) seg[j - start] = 0;
    }
    for (std::uint64_t i = start; i <= end; ++i) {
      if (seg[i - start]) out.push_back(i);
    }
    if (end == hi) break;
  }
  return out;
}

u128 checked_power(std::uint64_t p, unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (p != 0 && r > (u128{1} << 127) / p) throw std::overflow_error("checked_power: p^e exceeds 127 bits");
    r *= p;
  }
  return r;
}

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

Mod64Ring::Mod64Ring(std::uint64_t modulus) : m_(modulus) {
  if (modulus == 0 || modulus >= (std::uint64_t{1} << 63)) {
    throw std::invalid_argument("Mod64Ring: modulus must be in [1, 2^63)");
  }
}

Mod64Ring::value_type Mod64Ring::pow(value_type base, u128 e) const noexcept {
  value_type r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Mod128Ring::Mod128Ring(u128 modulus) : m_(modulus) {
  if (modulus < 3 || (modulus & 1) == 0 || (modulus >> 127) != 0) {
    throw std::invalid_argument("Mod128Ring: modulus must be odd and in [3, 2^127)");
  }
  u128 inv = modulus;  // correct to 3 bits; each Newton step doubles that
  for (int i = 0; i < 6; ++i) inv *= 2 - modulus * inv;
  m_neg_inv_ = 0 - inv;
  r1_ = (~u128{0} % m_ + 1) % m_;
  u128 x = r1_;
  for (int i = 0; i < 128; ++i) x = add(x, x);
  r2_ = x;
}

u128 Mod128Ring::redc(u128 lo, u128 hi) const noexcept {
  const u128 u = lo * m_neg_inv_;
  const auto [ulo, uhi] = mul_full(u, m_);
  const u128 s = lo + ulo;
  const u128 carry = s < lo ? 1 : 0;
  u128 t = hi + uhi + carry;
  if (t >= m_) t -= m_;
  return t;
}

Mod128Ring::value_type Mod128Ring::mul(value_type a, value_type b) const noexcept {
  const auto [lo, hi] = mul_full(a, b);
  return redc(lo, hi);
}

Mod128Ring::value_type Mod128Ring::pow(value_type base, u128 e) const noexcept {
  value_type r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

}  // namespace gdet
