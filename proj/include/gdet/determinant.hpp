#ifndef GDET_DETERMINANT_HPP
#define GDET_DETERMINANT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdet/compute.hpp"
#include "gdet/group.hpp"
#include "gdet/sparse_poly.hpp"

namespace gdet {

/// The matrix (x_{g h^-1}) of a group, stored as variable indices.
struct GroupMatrix {
  std::size_t n = 0;
  std::vector<std::uint8_t> entry;  // row-major, entry[g*n + h]

  [[nodiscard]] std::size_t at(std::size_t g, std::size_t h) const noexcept { return entry[g * n + h]; }
};

inline constexpr std::size_t kMaxDeterminantOrder = 16;

/// Requires validate(g) to be empty and |G| <= 16.
[[nodiscard]] GroupMatrix group_matrix(const FiniteGroup& g);

/// Θ(G) by Laplace expansion along columns left to right, memoizing the
/// minors on row subsets: D(S) for |S| = m is the minor on rows S and
/// columns 0..m-1. Only two consecutive levels are resident.
template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> det_subset_dp(const GroupMatrix& m, const ComputeOptions& options = {});

/// One factor of the circulant product: prod over i in [0,d) with
/// gcd(i,d) = 1 of sum_j ζ_d^{ij} x_j, computed in Z[ζ_d] and collapsed to Z.
[[nodiscard]] SparsePoly<Integer> circulant_norm_factor(std::size_t n, unsigned d,
                                                        const ComputeOptions& options = {});

/// Θ(C_n) as the product of circulant_norm_factor over all divisors d of n.
template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> det_circulant_character(std::size_t n, const ComputeOptions& options = {});

enum class DetMethod { Auto, SubsetDp, Character };

/// Dispatch: cyclic groups use the character product (variables relabelled
/// through a generator), everything else the subset DP.
template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> group_determinant(const FiniteGroup& g, const ComputeOptions& options = {},
                                                   DetMethod method = DetMethod::Auto);

struct TermCountSeries {
  std::vector<std::uint64_t> counts;  // counts[j-1] = N(Θ(G)^j)
  bool monte_carlo = false;
  /// Heuristic bound terms * bits / q on the probability a ModPrime count is low.
  std::vector<double> failure_bound;
  /// Set when the budget stopped the run; counts holds the completed prefix.
  std::optional<std::string> exhausted;
};

/// Term counts of Θ(G)^j for j = 1..k, each reported to on_count as soon as
/// it is known (iterated multiplication by Θ(G)).
[[nodiscard]] TermCountSeries term_count_power(
    const FiniteGroup& g, unsigned k, CoefficientMode mode, const ComputeOptions& options = {},
    const std::function<void(unsigned, std::uint64_t)>& on_count = {});

/// Upper bound on the bit length of any coefficient of Θ(G)^k: log2(|G|!^k).
[[nodiscard]] double coefficient_bit_bound(std::size_t order, unsigned k);

[[nodiscard]] double monte_carlo_failure_bound(std::uint64_t terms, double coefficient_bits);

/// Mode used when the caller does not force one: ModPrime for |G| >= 14.
[[nodiscard]] CoefficientMode default_mode_for_order(std::size_t order) noexcept;

}  // namespace gdet

#endif  // GDET_DETERMINANT_HPP
