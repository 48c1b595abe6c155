#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "gdet/sparse_poly.hpp"

using namespace gdet;
using P = SparsePoly<Integer>;

namespace {

Monomial mono(std::initializer_list<unsigned> e) {
  Monomial m;
  std::size_t v = 0;
  for (unsigned x : e) m.set_exponent(v++, x);
  return m;
}

P random_poly(std::mt19937_64& rng, std::size_t n, std::size_t terms, unsigned max_exp) {
  std::vector<Term<Integer>> t;
  for (std::size_t i = 0; i < terms; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < n; ++v) m.set_exponent(v, static_cast<unsigned>(rng() % (max_exp + 1)));
    t.push_back({m, Integer(static_cast<std::int64_t>(rng() % 2001) - 1000)});
  }
  return P::from_terms(n, std::move(t));
}

// Dense-map product used as the reference.
P naive_mul(const P& a, const P& b) {
  std::map<Monomial, BigInt> acc;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) acc[x.mono * y.mono] += x.coeff.to_big() * y.coeff.to_big();
  }
  std::vector<Term<Integer>> t;
  for (const auto& [m, c] : acc) t.push_back({m, Integer(c)});
  return P::from_terms(a.n_vars(), std::move(t));
}

}  // namespace

TEST_CASE("monomial order is lexicographic") {
  CHECK(mono({0, 1}) < mono({1, 0}));
  CHECK(mono({1, 0, 5}) < mono({1, 1, 0}));
  Monomial m;
  m.set_exponent(15, 3);
  CHECK(m.exponent(15) == 3);
  CHECK(Monomial{} < m);
  CHECK((mono({1, 2}) * mono({3, 4})) == mono({4, 6}));
  CHECK(mono({2, 3, 4}).degree() == 9);
  CHECK_THROWS((void)m.set_exponent(16, 1));
  CHECK_THROWS((void)m.set_exponent(0, 256));
}

TEST_CASE("from_terms canonicalizes") {
  P p = P::from_terms(2, {{mono({1, 0}), Integer(2)}, {mono({0, 1}), Integer(3)}, {mono({1, 0}), Integer(-2)}});
  CHECK(p.size() == 1);
  CHECK(p.is_canonical());
  CHECK(p.coefficient(mono({0, 1})) == Integer(3));
  CHECK(p.coefficient(mono({1, 0})).is_zero());
  CHECK_THROWS((void)P::from_terms(1, {{mono({0, 1}), Integer(1)}}));
  CHECK_THROWS((void)P(0));
  CHECK_THROWS((void)P(17));
}

TEST_CASE("(x0 + x1)^2 = x0^2 + 2 x0 x1 + x1^2") {
  const P x = P::variable(2, 0), y = P::variable(2, 1);
  const P s = poly_add(x, y);
  const P sq = poly_mul(s, s);
  CHECK(sq.size() == 3);
  CHECK(sq.coefficient(mono({1, 1})) == Integer(2));
  CHECK(poly_add(sq, poly_neg(sq)).empty());
}

TEST_CASE("product matches the naive reference and is independent of jobs") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 30; ++iter) {
    const std::size_t n = 1 + rng() % 6;
    const P a = random_poly(rng, n, 1 + rng() % 60, 4);
    const P b = random_poly(rng, n, 1 + rng() % 60, 4);
    const P ref = naive_mul(a, b);
    ComputeOptions one;
    ComputeOptions four;
    four.jobs = 4;
    const P p1 = poly_mul(a, b, one);
    const P p4 = poly_mul(a, b, four);
    CHECK(p1 == ref);
    CHECK(p4 == ref);
    CHECK(p1.is_canonical());
  }
}

TEST_CASE("products with coefficient growth past 128 bits") {
  const P x = P::variable(1, 0, Integer::from_string("340282366920938463463374607431768211455"));
  const P p = poly_pow(x, 3);
  CHECK(p.coefficient(mono({3})).to_big() ==
        BigInt("340282366920938463463374607431768211455") * BigInt("340282366920938463463374607431768211455") *
            BigInt("340282366920938463463374607431768211455"));
}

TEST_CASE("power callback and stats") {
  const P s = poly_add(P::variable(3, 0), poly_add(P::variable(3, 1), P::variable(3, 2)));
  ComputeStats stats;
  ComputeOptions opt;
  opt.stats = &stats;
  std::vector<std::size_t> sizes;
  const P p = poly_pow<Integer>(s, 4, opt, [&](unsigned, const P& q) { sizes.push_back(q.size()); });
  CHECK(sizes == std::vector<std::size_t>{3, 6, 10, 15});
  CHECK(stats.multiplications == 3);
  CHECK(is_homogeneous(p, 4));
  CHECK_THROWS((void)poly_pow(s, 0));
}

TEST_CASE("budget exhaustion is reported") {
  std::mt19937_64 rng(5);
  const P a = random_poly(rng, 6, 400, 6);
  ComputeOptions opt;
  opt.memory_budget = 4096;
  CHECK_THROWS_AS((void)poly_mul(a, a, opt), BudgetExceeded);
}

TEST_CASE("degree cap") {
  P x = P::from_terms(1, {{mono({200}), Integer(1)}});
  CHECK_THROWS((void)poly_mul(x, x));
}

TEST_CASE("evaluate, permute and convert") {
  // 2 x0^2 x1 - 3 x1 + 1
  const P p = P::from_terms(2, {{mono({2, 1}), Integer(2)}, {mono({0, 1}), Integer(-3)}, {mono({0, 0}), Integer(1)}});
  const std::int64_t pt[] = {3, -2};
  CHECK(evaluate(p, pt) == Integer(2 * 9 * -2 + 6 + 1));
  const std::size_t perm[] = {1, 0};
  const P q = permute_variables(p, perm);
  CHECK(q.coefficient(mono({1, 2})) == Integer(2));
  const std::int64_t swapped[] = {-2, 3};
  CHECK(evaluate(q, swapped) == evaluate(p, pt));
  const auto m = convert_coefficients<ModP61>(p);
  CHECK(m.coefficient(mono({0, 1})) == ModP61::from_signed(-3));
}
