#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gdet/integer.hpp"
#include "gdet/modp.hpp"

using gdet::BigInt;
using gdet::Integer;

namespace {

// Values that straddle the inline/heap boundary as well as small ones.
BigInt random_big(std::mt19937_64& rng) {
  const int bits = static_cast<int>(rng() % 200);
  BigInt v = 0;
  for (int i = 0; i < bits; i += 32) {
    v <<= 32;
    v += static_cast<unsigned long>(rng() & 0xFFFFFFFFULL);
  }
  if (bits > 0) v >>= (bits % 32 == 0 ? 0 : 32 - bits % 32);
  if (rng() & 1) v = -v;
  return v;
}

Integer from(const BigInt& v) { return Integer(v); }

}  // namespace

TEST_CASE("small construction and printing") {
  CHECK(Integer(0).is_zero());
  CHECK(Integer(-5).to_string() == "-5");
  CHECK(Integer(std::int64_t{INT64_MIN}).to_string() == "-9223372036854775808");
  CHECK(Integer::from_string("123456789012345678901234567890123456789012").to_string() ==
        "123456789012345678901234567890123456789012");
  CHECK(Integer(7).sign() == 1);
  CHECK(Integer(-7).sign() == -1);
  CHECK(Integer(0).sign() == 0);
}

TEST_CASE("boundary of the inline representation") {
  const BigInt two127 = BigInt(1) << 127;
  Integer a = from(two127 - 1);
  CHECK(a.is_inline());
  a += 1;
  CHECK_FALSE(a.is_inline());
  CHECK(a.to_big() == two127);
  a -= 1;
  CHECK(a.is_inline());
  Integer b = from(-two127);
  CHECK(b.to_big() == -two127);
  b -= 1;
  CHECK(b.to_big() == -two127 - 1);
}

TEST_CASE("arithmetic agrees with GMP") {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 20000; ++iter) {
    const BigInt x = random_big(rng), y = random_big(rng), z = random_big(rng);
    CHECK((from(x) + from(y)).to_big() == x + y);
    CHECK((from(x) - from(y)).to_big() == x - y);
    CHECK((from(x) * from(y)).to_big() == x * y);
    CHECK((-from(x)).to_big() == -x);
    Integer acc = from(z);
    mul_add(acc, from(x), from(y));
    CHECK(acc.to_big() == z + x * y);
    mul_sub(acc, from(x), from(y));
    CHECK(acc.to_big() == z);
    CHECK(acc == from(z));
    CHECK(((from(x) <=> from(y)) < 0) == (x < y));
    const unsigned long m = 1 + (rng() >> 1);
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), m);
    CHECK(from(x).mod_u64(m) == r.get_ui());
  }
}

TEST_CASE("canonical form: equal values compare equal regardless of history") {
  const BigInt big = BigInt(1) << 150;
  Integer a = from(big);
  a -= from(big - 3);
  CHECK(a.is_inline());
  CHECK(a == Integer(3));
}

TEST_CASE("magnitude bytes round trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const BigInt x = random_big(rng);
    const Integer v = from(x);
    const auto bytes = v.magnitude_bytes();
    if (!bytes.empty()) CHECK(bytes.back() != 0);
    CHECK(Integer::from_magnitude(v.sign() < 0, bytes) == v);
  }
  CHECK(Integer(0).magnitude_bytes().empty());
}

TEST_CASE("pow and bit_length") {
  CHECK(gdet::pow(Integer(3), 100).to_big() == BigInt("515377520732011331036461129765621272702107522001"));
  CHECK(Integer(255).bit_length() == 8);
  CHECK(from(BigInt(1) << 200).bit_length() == 201);
}

TEST_CASE("ModP61 reduction") {
  using gdet::ModP61;
  CHECK(ModP61::from_signed(-1).value == ModP61::kModulus - 1);
  CHECK(ModP61::from_integer(Integer(-1)) == ModP61::from_signed(-1));
  const BigInt big = (BigInt(1) << 200) + 17;
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), big.get_mpz_t(), ModP61::kModulus);
  CHECK(ModP61::from_integer(from(big)).value == r.get_ui());
  CHECK(ModP61::from_integer(from(-big)).value == (ModP61::kModulus - r.get_ui()) % ModP61::kModulus);
  const ModP61 a(ModP61::kModulus - 2), b(ModP61::kModulus - 3);
  CHECK((a * b).value == 6);
}
