#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "gdet/partitions.hpp"

using namespace gdet;

namespace {

BigInt big(const char* s) { return BigInt(s); }

}  // namespace

TEST_CASE("euler_phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(97) == 96);
  CHECK(euler_phi(1000000007) == 1000000006);
  CHECK_THROWS((void)euler_phi(0));
  for (std::uint64_t n = 1; n <= 300; ++n) {
    std::uint64_t count = 0;
    for (std::uint64_t i = 1; i <= n; ++i) count += std::gcd(i, n) == 1;
    CHECK(euler_phi(n) == count);
  }
}

TEST_CASE("binomial_big") {
  CHECK(binomial_big(9, 4) == 126);
  CHECK(binomial_big(13, 6) == 1716);
  CHECK(binomial_big(5, 0) == 1);
  CHECK(binomial_big(3, 5) == 0);
  for (std::uint64_t d = 1; d <= 50; ++d) {
    for (std::uint64_t k = 1; k <= 10; ++k) {
      const std::uint64_t kp = k + 1;
      CHECK(binomial_big(d * k + d - 1, d - 1) == binomial_big(kp * d - 1, d - 1));
    }
  }
}

TEST_CASE("card_lambda values") {
  CHECK(card_lambda(5, 1).value == 26);
  CHECK(card_lambda(6, 1).value == 80);
  CHECK(card_lambda(9, 10).value == big("17485161178"));
  CHECK(card_lambda(14, 2).value == big("1258579654"));
  for (std::uint64_t k = 1; k <= 5; ++k) CHECK(card_lambda(1, k).value == 1);
  CHECK(card_lambda(5, 1).method == CountMethod::Formula);
  CHECK_THROWS((void)card_lambda(0, 1));
}

TEST_CASE("divisor sum is always divisible by n") {
  for (std::uint64_t n = 1; n <= 200; ++n) {
    for (std::uint64_t k = 1; k <= 10; ++k) CHECK_NOTHROW((void)card_lambda(n, k));
  }
}

TEST_CASE("strictly increasing in k for n >= 2") {
  for (std::uint64_t n = 2; n <= 14; ++n) {
    for (std::uint64_t k = 1; k < 10; ++k) CHECK(card_lambda(n, k + 1).value > card_lambda(n, k).value);
  }
}

TEST_CASE("enumeration") {
  CHECK(enumerate_lambda(2, 1) == 2);
  CHECK(enumerate_lambda(6, 1) == 80);
  CHECK(enumerate_lambda(1, 3) == 1);
  CHECK(enumeration_feasible(10, 1));
  CHECK_FALSE(enumeration_feasible(31, 1));
  CHECK_FALSE(enumeration_feasible(15, 2));
  CHECK_THROWS((void)enumerate_lambda(16, 2));
  for (std::uint64_t n = 1; n <= 6; ++n) {
    for (std::uint64_t k = 1; k <= 3; ++k) CHECK(card_lambda(n, k).value == enumerate_lambda(n, k));
  }
  for (std::uint64_t n = 7; n <= 10; ++n) CHECK(card_lambda(n, 1).value == enumerate_lambda(n, 1));
}

TEST_CASE("prime power congruence report") {
  const auto r = prime_power_congruence_report(5, 1, 1);
  CHECK(r.value == 26);
  CHECK(r.residue_p2 == 1);
  CHECK(r.all_hold());
  CHECK(prime_power_congruence_report(5, 2, 1).residue_p2 == 1);
  const auto s = prime_power_congruence_report(7, 1, 3);
  CHECK(s.value == 42288);
  CHECK(s.residue_p2 == 1);
  for (std::uint64_t p : {5, 7, 11, 13}) {
    for (unsigned l = 1; l <= 3; ++l) {
      for (std::uint64_t k = 1; k <= 4; ++k) {
        const auto rep = prime_power_congruence_report(p, l, k);
        CAPTURE(p);
        CAPTURE(l);
        CAPTURE(k);
        CHECK(rep.all_hold());
        CHECK(rep.difference_divisible.size() == l);
      }
    }
  }
  CHECK_THROWS((void)prime_power_congruence_report(3, 1, 1));
  CHECK_THROWS((void)prime_power_congruence_report(9, 1, 1));
}
