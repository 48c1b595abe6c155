#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gdet/group.hpp"

using namespace gdet;

namespace {

std::size_t involutions(const FiniteGroup& g) {
  const auto s = order_statistics(g);
  return s.count(2) ? s.at(2) : 0;
}

}  // namespace

TEST_CASE("basic families are groups") {
  for (std::size_t n = 1; n <= 20; ++n) CHECK(validate(make_cyclic(n)).empty());
  for (std::size_t n = 4; n <= 20; n += 2) CHECK(validate(make_dihedral(n)).empty());
  for (std::size_t n = 8; n <= 32; n *= 2) CHECK(validate(make_quaternion(n)).empty());
  CHECK_THROWS((void)make_cyclic(0));
  const auto d6 = make_dihedral(6);
  CHECK_FALSE(is_abelian(d6));
  CHECK(involutions(d6) == 3);
  CHECK(involutions(make_quaternion(8)) == 1);
  CHECK(element_order(make_cyclic(12), 1) == 12);
}

TEST_CASE("validate reports broken tables") {
  auto c3 = make_cyclic(3);
  std::vector<Element> mul(c3.table().begin(), c3.table().end());
  std::swap(mul[4], mul[5]);
  const FiniteGroup broken("broken", 3, mul, 0);
  CHECK_FALSE(validate(broken).empty());
  const FiniteGroup not_latin("bad", 2, {0, 0, 0, 0}, 0);
  bool latin = false;
  for (const auto& v : validate(not_latin)) latin = latin || v.kind == ViolationKind::LatinSquare;
  CHECK(latin);
}

TEST_CASE("order 16 catalog") {
  const auto groups = catalog_order16();
  REQUIRE(groups.size() == 14);
  const std::map<unsigned, std::size_t> expected_involutions{
      {1, 1}, {2, 3}, {3, 7}, {4, 3}, {5, 3}, {6, 3}, {7, 9}, {8, 5}, {9, 1}, {10, 7}, {11, 11}, {12, 3}, {13, 7}, {14, 15}};
  const std::set<unsigned> abelian_ids{1, 2, 5, 10, 14};
  std::set<unsigned> seen;
  for (const auto& g : groups) {
    CAPTURE(g.name());
    CHECK(g.order() == 16);
    CHECK(validate(g).empty());
    REQUIRE(g.gap_id().has_value());
    CHECK(g.gap_id()->order == 16);
    const unsigned id = g.gap_id()->number;
    seen.insert(id);
    CHECK(involutions(g) == expected_involutions.at(id));
    CHECK(is_abelian(g) == (abelian_ids.count(id) == 1));
    CHECK(find_generator(g).has_value() == (id == 1));
  }
  CHECK(seen.size() == 14);
}

TEST_CASE("lookup by name and GAP id") {
  CHECK(group_by_name("C_8")->order() == 8);
  CHECK(group_by_name("D_16")->gap_id() == GapId{16, 7});
  CHECK(group_by_name("Q_16")->gap_id() == GapId{16, 9});
  CHECK_FALSE(group_by_name("X_3").has_value());
  CHECK(group_by_gap_id({16, 14})->name() == "C_2^4");
  CHECK_FALSE(group_by_gap_id({16, 15}).has_value());
}

TEST_CASE("json round trip") {
  const auto g = make_presented(PresentedGroup::C4_rtimes_C4);
  const auto back = group_from_json(group_to_json(g));
  CHECK(back.name() == g.name());
  CHECK(back.gap_id() == g.gap_id());
  CHECK(std::equal(back.table().begin(), back.table().end(), g.table().begin(), g.table().end()));
}

TEST_CASE("direct product") {
  const auto g = direct_product(make_cyclic(2), make_cyclic(3));
  CHECK(validate(g).empty());
  CHECK(find_generator(g).has_value());
  CHECK(g.name() == "C_2 x C_3");
}
