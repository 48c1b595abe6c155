#include "cli/verify.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "gdet/determinant.hpp"
#include "gdet/group.hpp"
#include "gdet/number_theory.hpp"
#include "gdet/partitions.hpp"
#include "gdet/wolstenholme.hpp"

namespace gdet::cli {
namespace {

CheckResult check(std::string name, bool ok, std::string detail = {}) {
  return CheckResult{std::move(name), ok, std::move(detail)};
}

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

std::string pair_text(std::uint64_t n, unsigned k) {
  return "(" + std::to_string(n) + "," + std::to_string(k) + ")";
}

struct GroupCount {
  std::string name;
  bool abelian;
  std::uint64_t terms;
};

std::vector<GroupCount> small_group_counts(std::size_t order, const ComputeOptions& options) {
  std::vector<FiniteGroup> groups;
  switch (order) {
    case 4:
      groups = {make_cyclic(4), direct_product(make_cyclic(2), make_cyclic(2))};
      break;
    case 6:
      groups = {make_cyclic(6), make_dihedral(6)};
      break;
    case 8:
      groups = {make_cyclic(8), direct_product(make_cyclic(4), make_cyclic(2)),
                direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2)), make_dihedral(8),
                make_quaternion(8)};
      break;
    default:
      break;
  }
  std::vector<GroupCount> out;
  for (const auto& g : groups) {
    out.push_back({g.name(), is_abelian(g), group_determinant<Integer>(g, options).size()});
  }
  return out;
}

}  // namespace

bool is_prime_power(std::uint64_t n) {
  if (n <= 1) return n == 1;
  std::uint64_t q = 2;
  while (n % q != 0) ++q;
  while (n % q == 0) n /= q;
  return n == 1;
}

std::vector<CheckResult> verify_theorems(const ComputeOptions& options) {
  std::vector<CheckResult> results;

  for (std::uint64_t p : {5, 7, 11, 13}) {
    const std::uint64_t terms = group_determinant<Integer>(make_cyclic(p), options).size();
    const BigInt lambda = card_lambda(p, 1).value;
    const BigInt identity = n_theta_via_identity(p);
    const bool mod_ok = (terms - 1) % (p * p) == 0;
    std::ostringstream detail;
    detail << "N=" << terms << " |Lambda|=" << lambda << " identity=" << identity;
    results.push_back(check("N(Theta(C_" + std::to_string(p) + ")) = |Lambda| = identity value, = 1 mod p^2",
                            lambda == terms && identity == terms && mod_ok, detail.str()));
  }

  std::vector<std::uint64_t> failures;
  const auto small_primes = primes_in_range(5, 499);
  for (std::uint64_t p : small_primes) {
    if (central_binom_mod(p, 3) != 1 || central_binom_mod(p, 2) != 1) failures.push_back(p);
  }
  results.push_back(check("C(2p-1,p-1) = 1 mod p^3 for primes 5..499", failures.empty(),
                          std::to_string(small_primes.size()) + " primes, " + std::to_string(failures.size()) +
                              " failures"));

  const u128 r5 = central_binom_mod(5, 4);
  results.push_back(check("C(9,4) mod 5^4 = 126", r5 == 126, "got " + u128_to_string(r5)));

  std::size_t prop_cases = 0;
  std::vector<std::string> prop_failures;
  for (std::uint64_t p : {5, 7, 11, 13}) {
    for (unsigned l = 1; l <= 3; ++l) {
      for (std::uint64_t k = 1; k <= 4; ++k) {
        ++prop_cases;
        if (!prime_power_congruence_report(p, l, k).all_hold()) {
          prop_failures.push_back("p=" + std::to_string(p) + " l=" + std::to_string(l) + " k=" + std::to_string(k));
        }
      }
    }
  }
  std::string prop_detail = std::to_string(prop_cases) + " cases";
  for (const auto& f : prop_failures) prop_detail += "; fails " + f;
  results.push_back(check("|Lambda_{p^l}^k| = 1 mod p^2 and telescoping p^{3i} divisibility", prop_failures.empty(),
                          prop_detail));

  const PrimeReport w = classify_prime(16843);
  results.push_back(check("16843: C(2p-1,p-1) = 1 mod p^4, H_{p-1} = 0 mod p^3, N(Theta(C_p)) = 1 mod p^3",
                          w.is_wolstenholme_prime && w.harmonic_residue_p3 == u128{0} && w.n_theta_residue_p3 == 1,
                          "residue_p4=" + u128_to_string(w.residue_p4) +
                              " n_theta_residue_p3=" + u128_to_string(w.n_theta_residue_p3)));

  std::vector<std::uint64_t> equivalence_failures;
  auto equivalence_primes = small_primes;
  equivalence_primes.push_back(16843);
  for (std::uint64_t p : equivalence_primes) {
    const PrimeReport rep = classify_prime(p);
    const bool binom = rep.residue_p4 == 1;
    const bool harmonic = rep.harmonic_residue_p3 == u128{0};
    const bool theta = rep.n_theta_residue_p3 == 1;
    if (binom != harmonic || binom != theta) equivalence_failures.push_back(p);
  }
  results.push_back(check("mod p^4 binomial <=> H_{p-1} = 0 mod p^3 <=> N(Theta(C_p)) = 1 mod p^3",
                          equivalence_failures.empty(),
                          std::to_string(equivalence_primes.size()) + " primes, " +
                              std::to_string(equivalence_failures.size()) + " failures"));
  return results;
}

std::vector<CheckResult> verify_questions(const CyclicCounts& counts, const ComputeOptions& options) {
  std::vector<CheckResult> results;
  std::vector<std::string> bound, equality, congruence;
  for (const auto& [key, terms] : counts) {
    const auto [n, k] = key;
    const BigInt lambda = card_lambda(n, k).value;
    if (!(big(terms) <= lambda)) bound.push_back(pair_text(n, k));
    if ((lambda == big(terms)) != is_prime_power(n)) equality.push_back(pair_text(n, k));
    BigInt diff = lambda - big(terms);
    if (mpz_divisible_ui_p(diff.get_mpz_t(), n) == 0) congruence.push_back(pair_text(n, k));
  }
  auto detail = [&](const std::vector<std::string>& bad) {
    std::string s = std::to_string(counts.size()) + " pairs";
    for (const auto& b : bad) s += "; fails " + b;
    return s;
  };
  results.push_back(check("N(Theta(C_n)^k) <= |Lambda_n^k|", bound.empty(), detail(bound)));
  results.push_back(check("equality iff n is a prime power", equality.empty(), detail(equality)));
  results.push_back(check("N(Theta(C_n)^k) = |Lambda_n^k| mod n", congruence.empty(), detail(congruence)));

  for (std::size_t order : {4, 6, 8}) {
    const auto groups = small_group_counts(order, options);
    std::string listing;
    for (const auto& g : groups) listing += g.name + "=" + std::to_string(g.terms) + " ";
    const std::uint64_t cyclic = groups.front().terms;
    const bool minimal = std::all_of(groups.begin(), groups.end(), [&](const auto& g) { return cyclic <= g.terms; });
    bool distinct = true;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) distinct = distinct && groups[i].terms != groups[j].terms;
    }
    std::uint64_t max_abelian = 0, min_nonabelian = UINT64_MAX;
    for (const auto& g : groups) {
      if (g.abelian) {
        max_abelian = std::max(max_abelian, g.terms);
      } else {
        min_nonabelian = std::min(min_nonabelian, g.terms);
      }
    }
    const std::string suffix = " (order " + std::to_string(order) + ")";
    results.push_back(check("cyclic group has the fewest terms" + suffix, minimal, listing));
    results.push_back(check("term counts separate the groups" + suffix, distinct, listing));
    results.push_back(check("abelian counts below nonabelian counts" + suffix, max_abelian < min_nonabelian, listing));
  }
  return results;
}

std::vector<CheckResult> verify_oracle() {
  std::vector<CheckResult> results;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t n = 1; n <= 6; ++n) {
    for (std::uint64_t k = 1; k <= 3; ++k) pairs.emplace_back(n, k);
  }
  for (std::uint64_t n = 7; n <= 10; ++n) pairs.emplace_back(n, 1);
  std::vector<std::string> bad;
  for (const auto& [n, k] : pairs) {
    const BigInt formula = card_lambda(n, k).value;
    const std::uint64_t enumerated = enumerate_lambda(n, k);
    if (formula != big(enumerated)) {
      bad.push_back(pair_text(n, static_cast<unsigned>(k)) + ": formula " + formula.get_str() + " enumeration " +
                    std::to_string(enumerated));
    }
  }
  std::string detail = std::to_string(pairs.size()) + " pairs";
  for (const auto& b : bad) detail += "; " + b;
  results.push_back(check("divisor-sum formula = enumeration", bad.empty(), detail));
  return results;
}

std::vector<CheckResult> verify_crossval(std::size_t n_max, const ComputeOptions& options) {
  std::vector<CheckResult> results;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto dp = det_subset_dp<Integer>(group_matrix(make_cyclic(n)), options);
    const auto character = det_circulant_character<Integer>(n, options);
    const auto modular = det_circulant_character<ModP61>(n, options);
    results.push_back(check("subset DP = character product for C_" + std::to_string(n),
                            dp == character && convert_coefficients<ModP61>(dp) == modular,
                            std::to_string(dp.size()) + " terms"));
  }
  return results;
}

bool report(std::ostream& out, const std::vector<CheckResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.ok ? "PASS  " : "FAIL  ") << r.name;
    if (!r.detail.empty()) out << "  [" << r.detail << "]";
    out << '\n';
    all = all && r.ok;
  }
  return all;
}

}  // namespace gdet::cli
