#ifndef GDET_PARTITIONS_HPP
#define GDET_PARTITIONS_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "gdet/integer.hpp"
#include "gdet/number_theory.hpp"

namespace gdet {

enum class CountMethod { Formula, Enumeration };

[[nodiscard]] std::string_view to_string(CountMethod method) noexcept;

/// |Λ̃_n^k|: nondecreasing sequences of length kn over {1..n} whose sum is divisible by n.
struct PartitionCount {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  BigInt value;
  CountMethod method = CountMethod::Formula;
};

/// C(a, b), zero when b > a.
[[nodiscard]] BigInt binomial_big(std::uint64_t a, std::uint64_t b);

/// (1/n) sum_{d | n} C(dk + d - 1, d - 1) φ(n/d). Throws std::logic_error if
/// the divisor sum is not a multiple of n.
[[nodiscard]] PartitionCount card_lambda(std::uint64_t n, std::uint64_t k);

/// Exhaustive count by depth-first search. Throws std::invalid_argument
/// unless k*n <= 30 and there are at most 2e9 candidate sequences.
[[nodiscard]] std::uint64_t enumerate_lambda(std::uint64_t n, std::uint64_t k);

/// True when enumerate_lambda accepts (n, k).
[[nodiscard]] bool enumeration_feasible(std::uint64_t n, std::uint64_t k);

struct CongruenceReport {
  std::uint64_t p = 0;
  unsigned l = 0;
  std::uint64_t k = 0;
  BigInt value;  // |Λ̃_{p^l}^k|
  BigInt residue_p2;
  BigInt residue_p3;
  bool congruent_p2 = false;  // value ≡ 1 (mod p^2)
  /// p^l |Λ̃| - p^l equals sum_i (C(k'p^i - 1, p^i - 1) - C(k'p^{i-1} - 1, p^{i-1} - 1)) p^{l-i}, k' = k + 1.
  bool telescoping_holds = false;
  /// Entry i-1 says whether the i-th bracketed difference is divisible by p^{3i}.
  std::vector<bool> difference_divisible;

  [[nodiscard]] bool all_hold() const noexcept;
};

/// Throws std::invalid_argument for p < 5, composite p, l = 0 or k = 0.
[[nodiscard]] CongruenceReport prime_power_congruence_report(std::uint64_t p, unsigned l, std::uint64_t k);

}  // namespace gdet

#endif  // GDET_PARTITIONS_HPP
