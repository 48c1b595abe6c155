#include "gdet/partitions.hpp"

#include <stdexcept>

namespace gdet {

std::string_view to_string(CountMethod method) noexcept {
  return method == CountMethod::Formula ? "formula" : "enumeration";
}

BigInt binomial_big(std::uint64_t a, std::uint64_t b) {
  BigInt r;
  if (b > a) return r;
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  return r;
}

PartitionCount card_lambda(std::uint64_t n, std::uint64_t k) {
  if (n == 0 || k == 0) throw std::invalid_argument("card_lambda: n and k must be positive");
  BigInt sum = 0;
  for (std::uint64_t d : divisors(n)) {
    BigInt phi;
    mpz_set_ui(phi.get_mpz_t(), euler_phi(n / d));
    sum += binomial_big(d * k + d - 1, d - 1) * phi;
  }
  BigInt q, r;
  BigInt nn;
  mpz_set_ui(nn.get_mpz_t(), n);
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), sum.get_mpz_t(), nn.get_mpz_t());
  if (r != 0) throw std::logic_error("card_lambda: divisor sum is not divisible by n");
  return PartitionCount{n, k, q, CountMethod::Formula};
}

bool enumeration_feasible(std::uint64_t n, std::uint64_t k) {
  if (n == 0 || k == 0 || k * n > 30) return false;
  return binomial_big(k * n + n - 1, n - 1) <= 2000000000;
}

namespace {

struct Enumerator {
  std::uint64_t n;
  std::uint64_t length;

  // sequences for positions pos..length-1 with values >= low, given residue of the prefix sum
  std::uint64_t count(std::uint64_t pos, std::uint64_t low, std::uint64_t residue) const {
    if (pos + 1 == length) {
      // the only value in [1, n] completing the residue
      const std::uint64_t need = (n - residue) % n;
      return (need == 0 ? n : need) >= low ? 1 : 0;
    }
    std::uint64_t total = 0;
    for (std::uint64_t v = low; v <= n; ++v) total += count(pos + 1, v, (residue + v) % n);
    return total;
  }
};

}  // namespace

std::uint64_t enumerate_lambda(std::uint64_t n, std::uint64_t k) {
  if (!enumeration_feasible(n, k)) {
    throw std::invalid_argument("enumerate_lambda: (n, k) outside the enumeration guardrail");
  }
  return Enumerator{n, k * n}.count(0, 1, 0);
}

bool CongruenceReport::all_hold() const noexcept {
  if (!congruent_p2 || !telescoping_holds) return false;
  for (bool b : difference_divisible) {
    if (!b) return false;
  }
  return true;
}

CongruenceReport prime_power_congruence_report(std::uint64_t p, unsigned l, std::uint64_t k) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("prime_power_congruence_report: p must be a prime >= 5");
  if (l == 0 || k == 0) throw std::invalid_argument("prime_power_congruence_report: l and k must be positive");
  BigInt pp;
  mpz_set_ui(pp.get_mpz_t(), p);
  BigInt n_big;
  mpz_pow_ui(n_big.get_mpz_t(), pp.get_mpz_t(), l);
  if (!n_big.fits_ulong_p()) throw std::invalid_argument("prime_power_congruence_report: p^l too large");
  const std::uint64_t n = n_big.get_ui();

  CongruenceReport rep;
  rep.p = p;
  rep.l = l;
  rep.k = k;
  rep.value = card_lambda(n, k).value;
  const BigInt p2 = pp * pp;
  const BigInt p3 = p2 * pp;
  mpz_fdiv_r(rep.residue_p2.get_mpz_t(), rep.value.get_mpz_t(), p2.get_mpz_t());
  mpz_fdiv_r(rep.residue_p3.get_mpz_t(), rep.value.get_mpz_t(), p3.get_mpz_t());
  rep.congruent_p2 = rep.residue_p2 == 1;

  const std::uint64_t kp = k + 1;
  BigInt rhs = 0;
  std::uint64_t prev_power = 1;  // p^{i-1}
  for (unsigned i = 1; i <= l; ++i) {
    const std::uint64_t power = prev_power * p;
    const BigInt diff = binomial_big(kp * power - 1, power - 1) - binomial_big(kp * prev_power - 1, prev_power - 1);
    BigInt scale;
    mpz_pow_ui(scale.get_mpz_t(), pp.get_mpz_t(), l - i);
    rhs += diff * scale;
    BigInt p3i;
    mpz_pow_ui(p3i.get_mpz_t(), pp.get_mpz_t(), 3 * i);
    rep.difference_divisible.push_back(mpz_divisible_p(diff.get_mpz_t(), p3i.get_mpz_t()) != 0);
    prev_power = power;
  }
  rep.telescoping_holds = n_big * rep.value - n_big == rhs;
  return rep;
}

}  // namespace gdet
