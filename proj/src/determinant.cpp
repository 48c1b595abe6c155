#include "gdet/determinant.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gdet/cyclotomic.hpp"

namespace gdet {

GroupMatrix group_matrix(const FiniteGroup& g) {
  if (!validate(g).empty()) throw std::invalid_argument("group_matrix: table is not a valid group");
  if (g.order() > kMaxDeterminantOrder) throw std::invalid_argument("group_matrix: order exceeds 16");
  GroupMatrix m;
  m.n = g.order();
  m.entry.resize(m.n * m.n);
  for (Element a = 0; a < m.n; ++a) {
    for (Element b = 0; b < m.n; ++b) m.entry[a * m.n + b] = static_cast<std::uint8_t>(g.mul(a, g.inv(b)));
  }
  return m;
}

template <class Scalar>
SparsePoly<Scalar> det_subset_dp(const GroupMatrix& m, const ComputeOptions& options) {
  using P = SparsePoly<Scalar>;
  const std::size_t n = m.n;
  if (n == 0 || n > kMaxDeterminantOrder) throw std::invalid_argument("det_subset_dp: order must be in [1, 16]");
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<P> prev(full + 1, P(n));
  std::vector<P> cur(full + 1, P(n));
  prev[0] = P::constant(n, Scalar(1));
  std::vector<std::size_t> prev_masks{0};
  std::size_t prev_terms = 1;
  std::vector<PolyAccumulator<Scalar>> accumulators(std::max(1U, options.jobs));

  for (std::size_t level = 1; level <= n; ++level) {
    std::vector<std::size_t> masks;
    for (std::size_t s = (std::size_t{1} << level) - 1; s <= full;) {
      masks.push_back(s);
      // next subset of the same size (Gosper)
      const std::size_t c = s & (~s + 1);
      const std::size_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
    const std::size_t col = level - 1;
    std::atomic<std::size_t> level_terms{0};
    std::atomic<std::size_t> done{0};
    parallel_for(masks.size(), options.jobs, [&](std::size_t i, std::size_t worker) {
      const std::size_t subset = masks[i];
      auto& acc = accumulators[worker];
      std::size_t pos = 0;
      for (std::size_t row = 0; row < n; ++row) {
        if ((subset >> row & 1U) == 0) continue;
        const bool negative = (pos + col) % 2 == 1;
        const Monomial shift = Monomial::unit(m.at(row, col));
        for (const auto& t : prev[subset & ~(std::size_t{1} << row)].terms()) {
          if (negative) {
            acc.at(t.mono * shift) -= t.coeff;
          } else {
            acc.at(t.mono * shift) += t.coeff;
          }
        }
        ++pos;
      }
      std::vector<Term<Scalar>> terms;
      terms.reserve(acc.size());
      acc.drain_sorted(terms);
      const std::size_t total = level_terms.fetch_add(terms.size()) + terms.size();
      cur[subset] = P::from_canonical(n, std::move(terms));
      const std::size_t required = (prev_terms + total) * sizeof(Term<Scalar>);
      if (required > options.memory_budget) {
        throw BudgetExceeded("det_subset_dp", options.memory_budget, required, total);
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (options.progress && worker == 0) {
        options.progress(Progress{"determinant", finished, masks.size(), total});
      }
    });
    for (std::size_t s : prev_masks) prev[s] = P(n);
    std::swap(prev, cur);
    prev_masks = std::move(masks);
    prev_terms = level_terms.load();
  }
  return prev[full];
}

SparsePoly<Integer> circulant_norm_factor(std::size_t n, unsigned d, const ComputeOptions& options) {
  if (n == 0 || n > Monomial::kMaxVars) throw std::invalid_argument("circulant_norm_factor: n must be in [1, 16]");
  if (d == 0 || n % d != 0) throw std::invalid_argument("circulant_norm_factor: d must divide n");
  const CyclotomicField field(d);
  using CT = Term<CyclotomicInt>;
  std::vector<CT> current;
  current.push_back({Monomial{}, CyclotomicInt(field, Integer(1))});
  PolyAccumulator<CyclotomicInt> acc;
  const std::size_t per_term = sizeof(CT) + field.degree() * sizeof(Integer);
  for (unsigned i = 0; i < d; ++i) {
    if (std::gcd(i, d) != 1) continue;
    for (const auto& t : current) {
      for (std::size_t j = 0; j < n; ++j) {
        add_root_multiple(acc.at(t.mono * Monomial::unit(j)), t.coeff, (std::uint64_t{i} * j) % d);
      }
    }
    const std::size_t required = (current.size() + acc.size()) * per_term + acc.memory_bytes();
    if (required > options.memory_budget) {
      throw BudgetExceeded("circulant_norm_factor", options.memory_budget, required, acc.size());
    }
    std::vector<CT> next;
    next.reserve(acc.size());
    acc.drain_sorted(next);
    current = std::move(next);
    if (options.progress) options.progress(Progress{"norm factor", i + 1, d, current.size()});
  }
  std::vector<Term<Integer>> out;
  out.reserve(current.size());
  for (const auto& t : current) {
    if (!t.coeff.is_rational()) {
      throw std::logic_error("circulant_norm_factor: coefficient did not collapse to an integer");
    }
    out.push_back({t.mono, t.coeff.rational_part()});
  }
  return SparsePoly<Integer>::from_canonical(n, std::move(out));
}

template <class Scalar>
SparsePoly<Scalar> det_circulant_character(std::size_t n, const ComputeOptions& options) {
  if (n == 0 || n > kMaxDeterminantOrder) {
    throw std::invalid_argument("det_circulant_character: n must be in [1, 16]");
  }
  std::vector<SparsePoly<Scalar>> factors;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d == 0) factors.push_back(convert_coefficients<Scalar>(circulant_norm_factor(n, d, options)));
  }
  // smallest first
  std::stable_sort(factors.begin(), factors.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  SparsePoly<Scalar> result = std::move(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) result = poly_mul(result, factors[i], options);
  return result;
}

template <class Scalar>
SparsePoly<Scalar> group_determinant(const FiniteGroup& g, const ComputeOptions& options, DetMethod method) {
  if (!validate(g).empty()) throw std::invalid_argument("group_determinant: table is not a valid group");
  if (g.order() > kMaxDeterminantOrder) throw std::invalid_argument("group_determinant: order exceeds 16");
  std::optional<Element> generator;
  if (method != DetMethod::SubsetDp) generator = find_generator(g);
  if (method == DetMethod::Character && !generator) {
    throw std::invalid_argument("group_determinant: character method needs a cyclic group");
  }
  if (!generator) return det_subset_dp<Scalar>(group_matrix(g), options);

  const std::size_t n = g.order();
  auto theta = det_circulant_character<Scalar>(n, options);
  // x_j of the circulant is x_{generator^j} of G
  std::vector<std::size_t> perm(n);
  Element power = g.identity();
  bool identity_map = true;
  for (std::size_t j = 0; j < n; ++j) {
    perm[j] = power;
    identity_map = identity_map && power == j;
    power = g.mul(power, *generator);
  }
  if (identity_map) return theta;
  return permute_variables(theta, perm);
}

double coefficient_bit_bound(std::size_t order, unsigned k) {
  const double bits = static_cast<double>(k) * std::lgamma(static_cast<double>(order) + 1.0) / std::log(2.0);
  return std::max(1.0, std::ceil(bits));
}

double monte_carlo_failure_bound(std::uint64_t terms, double coefficient_bits) {
  return static_cast<double>(terms) * coefficient_bits / static_cast<double>(ModP61::kModulus);
}

CoefficientMode default_mode_for_order(std::size_t order) noexcept {
  return order >= 14 ? CoefficientMode::ModPrime : CoefficientMode::Exact;
}

namespace {

template <class Scalar>
TermCountSeries term_count_power_impl(const FiniteGroup& g, unsigned k, const ComputeOptions& options,
                                      const std::function<void(unsigned, std::uint64_t)>& on_count) {
  TermCountSeries series;
  series.monte_carlo = is_monte_carlo_v<Scalar>;
  try {
    const auto theta = group_determinant<Scalar>(g, options);
    (void)poly_pow<Scalar>(theta, k, options, [&](unsigned j, const SparsePoly<Scalar>& p) {
      series.counts.push_back(p.size());
      series.failure_bound.push_back(
          series.monte_carlo ? monte_carlo_failure_bound(p.size(), coefficient_bit_bound(g.order(), j)) : 0.0);
      if (on_count) on_count(j, p.size());
    });
  } catch (const BudgetExceeded& e) {
    series.exhausted = e.what();
  }
  return series;
}

}  // namespace

TermCountSeries term_count_power(const FiniteGroup& g, unsigned k, CoefficientMode mode,
                                 const ComputeOptions& options,
                                 const std::function<void(unsigned, std::uint64_t)>& on_count) {
  if (k == 0) throw std::invalid_argument("term_count_power: k must be at least 1");
  if (mode == CoefficientMode::Exact) return term_count_power_impl<Integer>(g, k, options, on_count);
  return term_count_power_impl<ModP61>(g, k, options, on_count);
}

template SparsePoly<Integer> det_subset_dp<Integer>(const GroupMatrix&, const ComputeOptions&);
template SparsePoly<ModP61> det_subset_dp<ModP61>(const GroupMatrix&, const ComputeOptions&);
template SparsePoly<Integer> det_circulant_character<Integer>(std::size_t, const ComputeOptions&);
template SparsePoly<ModP61> det_circulant_character<ModP61>(std::size_t, const ComputeOptions&);
template SparsePoly<Integer> group_determinant<Integer>(const FiniteGroup&, const ComputeOptions&, DetMethod);
template SparsePoly<ModP61> group_determinant<ModP61>(const FiniteGroup&, const ComputeOptions&, DetMethod);

}  // namespace gdet
