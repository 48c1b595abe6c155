#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "gdet/serialize.hpp"

using namespace gdet;

namespace {

SparsePoly<Integer> sample(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<Term<Integer>> t;
  for (std::size_t i = 0; i < count; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < n; ++v) m.set_exponent(v, static_cast<unsigned>(rng() % 5));
    Integer c = Integer(static_cast<std::int64_t>(rng()));
    if (i % 3 == 0) c *= Integer::from_string("-98765432109876543210987654321098765432109876543210");
    t.push_back({m, c});
  }
  return SparsePoly<Integer>::from_terms(n, std::move(t));
}

}  // namespace

TEST_CASE("round trip exact and modprime") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1, 5, 16}) {
    const auto p = sample(rng, n, 300);
    CHECK(deserialize<Integer>(serialize(p)) == p);
    const auto q = convert_coefficients<ModP61>(p);
    CHECK(deserialize<ModP61>(serialize(q)) == q);
  }
  const SparsePoly<Integer> empty(4);
  CHECK(deserialize<Integer>(serialize(empty)) == empty);
}

TEST_CASE("layout of a two-term polynomial") {
  // x0 - 2 in one variable
  const auto p = SparsePoly<Integer>::from_terms(
      1, {{Monomial::unit(0), Integer(1)}, {Monomial{}, Integer(-2)}});
  const auto bytes = serialize(p);
  REQUIRE(bytes.size() == 34);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "GDET");
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 0);
  CHECK(bytes[6] == 0);   // exact
  CHECK(bytes[7] == 1);   // n_vars
  CHECK(bytes[8] == 2);   // term count
  // constant term first: exponent 0, negative, length 1, magnitude 2
  CHECK(bytes[16] == 0);
  CHECK(bytes[17] == 1);
  CHECK(bytes[18] == 1);
  CHECK(bytes[22] == 2);
  CHECK(bytes[23] == 1);
  CHECK(bytes[24] == 0);
  CHECK(bytes[29] == 1);
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  const PolyHeader h = read_poly_header(in);
  CHECK(h.term_count == 2);
  CHECK(h.n_vars == 1);
  CHECK(h.mode == CoefficientMode::Exact);
}

TEST_CASE("damaged input is rejected") {
  std::mt19937_64 rng(4);
  const auto bytes = serialize(sample(rng, 3, 50));
  for (std::size_t pos : {std::size_t{0}, std::size_t{10}, bytes.size() / 2, bytes.size() - 1}) {
    auto bad = bytes;
    bad[pos] ^= 0x40;
    CHECK_THROWS_AS((void)deserialize<Integer>(bad), FormatError);
  }
  auto truncated = bytes;
  truncated.resize(bytes.size() - 3);
  CHECK_THROWS_AS((void)deserialize<Integer>(truncated), FormatError);
  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS((void)deserialize<Integer>(trailing), FormatError);
  CHECK_THROWS_AS((void)deserialize<ModP61>(bytes), FormatError);
}
