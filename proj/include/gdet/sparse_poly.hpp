#ifndef GDET_SPARSE_POLY_HPP
#define GDET_SPARSE_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gdet/compute.hpp"
#include "gdet/integer.hpp"
#include "gdet/modp.hpp"
#include "gdet/monomial.hpp"

namespace gdet {

template <class Scalar>
struct Term {
  Monomial mono;
  Scalar coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse multivariate polynomial in at most 16 variables.
///
/// Terms are kept sorted strictly increasing in lexicographic exponent order
/// and no stored coefficient is zero, so equal polynomials have equal term
/// vectors. Instances are immutable once built.
template <class Scalar>
class SparsePoly {
public:
  using scalar_type = Scalar;
  using term_type = Term<Scalar>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t n_vars) : n_vars_(checked_vars(n_vars)) {}

  /// Sorts, merges duplicate monomials and drops zero coefficients.
  static SparsePoly from_terms(std::size_t n_vars, std::vector<term_type> terms) {
    SparsePoly p(n_vars);
    std::sort(terms.begin(), terms.end(),
              [](const term_type& x, const term_type& y) { return x.mono < y.mono; });
    std::vector<term_type> merged;
    merged.reserve(terms.size());
    for (auto& t : terms) {
      if (!merged.empty() && merged.back().mono == t.mono) {
        merged.back().coeff += t.coeff;
      } else {
        merged.push_back(std::move(t));
      }
    }
    std::erase_if(merged, [](const term_type& t) { return is_zero(t.coeff); });
    p.terms_ = std::move(merged);
    p.check_vars();
    return p;
  }

  /// Adopts terms the caller guarantees are already canonical.
  static SparsePoly from_canonical(std::size_t n_vars, std::vector<term_type> terms) {
    SparsePoly p(n_vars);
    p.terms_ = std::move(terms);
    return p;
  }

  static SparsePoly constant(std::size_t n_vars, Scalar c) {
    std::vector<term_type> t;
    t.push_back({Monomial{}, std::move(c)});
    return from_terms(n_vars, std::move(t));
  }

  static SparsePoly variable(std::size_t n_vars, std::size_t var, Scalar c = Scalar(1)) {
    if (var >= n_vars) throw std::out_of_range("SparsePoly::variable: index out of range");
    std::vector<term_type> t;
    t.push_back({Monomial::unit(var), std::move(c)});
    return from_terms(n_vars, std::move(t));
  }

  [[nodiscard]] std::size_t n_vars() const noexcept { return n_vars_; }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::span<const term_type> terms() const noexcept { return terms_; }

  [[nodiscard]] unsigned max_degree() const noexcept {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  /// Coefficient of `m`, zero when absent.
  [[nodiscard]] Scalar coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const term_type& t, Monomial key) { return t.mono < key; });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return Scalar{};
  }

  [[nodiscard]] bool is_canonical() const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (is_zero(terms_[i].coeff)) return false;
      if (i > 0 && !(terms_[i - 1].mono < terms_[i].mono)) return false;
      for (std::size_t v = n_vars_; v < Monomial::kMaxVars; ++v) {
        if (terms_[i].mono.exponent(v) != 0) return false;
      }
    }
    return true;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }

private:
  static std::size_t checked_vars(std::size_t n) {
    if (n == 0 || n > Monomial::kMaxVars) {
      throw std::invalid_argument("SparsePoly: variable count must be in [1, 16]");
    }
    return n;
  }
  void check_vars() const {
    for (const auto& t : terms_) {
      for (std::size_t v = n_vars_; v < Monomial::kMaxVars; ++v) {
        if (t.mono.exponent(v) != 0) {
          throw std::invalid_argument("SparsePoly: monomial uses a variable beyond n_vars");
        }
      }
    }
  }

  std::size_t n_vars_ = 1;
  std::vector<term_type> terms_;
};

/// N(f): the number of monomials with nonzero coefficient.
template <class Scalar>
[[nodiscard]] std::uint64_t term_count(const SparsePoly<Scalar>& a) noexcept {
  return a.size();
}

/// Open-addressing map from Monomial to coefficient used to accumulate sums
/// of products. Reusable: drain_sorted() empties it but keeps its capacity.
template <class Scalar>
class PolyAccumulator {
public:
  explicit PolyAccumulator(std::size_t capacity = 64) { rehash(round_up(capacity)); }

  Scalar& at(Monomial m) {
    std::size_t i = MonomialHash{}(m) & mask_;
    for (;;) {
      Monomial& k = keys_[i];
      if (k == m) return values_[i];
      if (k == kEmpty) break;
      i = (i + 1) & mask_;
    }
    if ((used_.size() + 1) * 2 > keys_.size()) {
      const std::size_t grown = memory_bytes() + 2 * keys_.size() * (sizeof(Monomial) + sizeof(Scalar)) +
                                keys_.size() * sizeof(std::uint32_t);
      if (grown > limit_) throw BudgetExceeded("accumulator", limit_, grown, used_.size());
      rehash(keys_.size() * 2);
      return at(m);
    }
    keys_[i] = m;
    used_.push_back(static_cast<std::uint32_t>(i));
    return values_[i];
  }

  [[nodiscard]] std::size_t size() const noexcept { return used_.size(); }

  /// Growth past `bytes` (old and new table together) throws BudgetExceeded.
  void set_limit(std::size_t bytes) noexcept { limit_ = bytes; }

  [[nodiscard]] std::size_t memory_bytes() const noexcept {
    return keys_.size() * (sizeof(Monomial) + sizeof(Scalar)) + used_.capacity() * sizeof(std::uint32_t);
  }

  /// Appends the nonzero entries to `out` in monomial order and resets.
  void drain_sorted(std::vector<Term<Scalar>>& out) {
    const std::size_t start = out.size();
    for (std::uint32_t slot : used_) {
      if (!is_zero(values_[slot])) out.push_back({keys_[slot], std::move(values_[slot])});
      keys_[slot] = kEmpty;
      values_[slot] = Scalar{};
    }
    used_.clear();
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end(),
              [](const Term<Scalar>& x, const Term<Scalar>& y) { return x.mono < y.mono; });
  }

private:
  static constexpr Monomial kEmpty{~std::uint64_t{0}, ~std::uint64_t{0}};

  static std::size_t round_up(std::size_t n) {
    std::size_t c = 16;
    while (c < n) c *= 2;
    return c;
  }

  void rehash(std::size_t capacity) {
    std::vector<Monomial> old_keys(capacity, kEmpty);
    std::vector<Scalar> old_values(capacity);
    old_keys.swap(keys_);
    old_values.swap(values_);
    mask_ = capacity - 1;
    std::vector<std::uint32_t> old_used;
    old_used.swap(used_);
    used_.reserve(capacity / 2);
    for (std::uint32_t slot : old_used) {
      const Monomial m = old_keys[slot];
      std::size_t i = MonomialHash{}(m) & mask_;
      while (keys_[i] != kEmpty) i = (i + 1) & mask_;
      keys_[i] = m;
      values_[i] = std::move(old_values[slot]);
      used_.push_back(static_cast<std::uint32_t>(i));
    }
  }

  std::vector<Monomial> keys_;
  std::vector<Scalar> values_;
  std::vector<std::uint32_t> used_;
  std::size_t mask_ = 0;
  std::size_t limit_ = SIZE_MAX;
};

template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> poly_add(const SparsePoly<Scalar>& a, const SparsePoly<Scalar>& b) {
  if (a.n_vars() != b.n_vars()) throw std::invalid_argument("poly_add: variable count mismatch");
  std::vector<Term<Scalar>> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->mono < ib->mono)) {
      out.push_back(*ia++);
    } else if (ia == a.terms().end() || ib->mono < ia->mono) {
      out.push_back(*ib++);
    } else {
      Scalar c = ia->coeff;
      c += ib->coeff;
      if (!is_zero(c)) out.push_back({ia->mono, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return SparsePoly<Scalar>::from_canonical(a.n_vars(), std::move(out));
}

template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> poly_neg(const SparsePoly<Scalar>& a) {
  std::vector<Term<Scalar>> out(a.terms().begin(), a.terms().end());
  for (auto& t : out) t.coeff = -t.coeff;
  return SparsePoly<Scalar>::from_canonical(a.n_vars(), std::move(out));
}

namespace detail {

struct LeadGroup {
  std::uint16_t key;
  std::uint32_t begin;
  std::uint32_t end;
};

template <class Scalar>
std::vector<LeadGroup> lead_groups(const SparsePoly<Scalar>& p) {
  std::vector<LeadGroup> groups;
  const auto terms = p.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::uint16_t k = terms[i].mono.lead_key();
    if (groups.empty() || groups.back().key != k) {
      groups.push_back({k, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i)});
    }
    groups.back().end = static_cast<std::uint32_t>(i + 1);
  }
  return groups;
}

struct GroupPair {
  std::uint16_t out_key;
  std::uint32_t ga;
  std::uint32_t gb;
};

}  // namespace detail

/// Exact product (or product over Z/qZ for ModP61 coefficients).
///
/// The output space is split into buckets by the first two exponents of the
/// product monomial; every bucket is accumulated independently and emitted
/// sorted, in bucket order. The result therefore does not depend on
/// options.jobs or on scheduling.
template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> poly_mul(const SparsePoly<Scalar>& a, const SparsePoly<Scalar>& b,
                                          const ComputeOptions& options = {}) {
  using T = Term<Scalar>;
  if (a.n_vars() != b.n_vars()) throw std::invalid_argument("poly_mul: variable count mismatch");
  if (a.empty() || b.empty()) return SparsePoly<Scalar>(a.n_vars());
  if (a.max_degree() + b.max_degree() > 255) {
    throw std::invalid_argument("poly_mul: product degree exceeds 255");
  }
  if (a.size() > 0xFFFFFFFFULL || b.size() > 0xFFFFFFFFULL) {
    throw std::invalid_argument("poly_mul: operand has more than 2^32 terms");
  }
  if (options.stats) options.stats->multiplications.fetch_add(1, std::memory_order_relaxed);

  const auto ga = detail::lead_groups(a);
  const auto gb = detail::lead_groups(b);
  std::vector<detail::GroupPair> pairs;
  pairs.reserve(ga.size() * gb.size());
  for (std::uint32_t i = 0; i < ga.size(); ++i) {
    for (std::uint32_t j = 0; j < gb.size(); ++j) {
      pairs.push_back({static_cast<std::uint16_t>(ga[i].key + gb[j].key), i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const detail::GroupPair& x, const detail::GroupPair& y) {
    if (x.out_key != y.out_key) return x.out_key < y.out_key;
    if (x.ga != y.ga) return x.ga < y.ga;
    return x.gb < y.gb;
  });
  std::vector<std::size_t> bucket_start;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i == 0 || pairs[i].out_key != pairs[i - 1].out_key) bucket_start.push_back(i);
  }
  bucket_start.push_back(pairs.size());
  const std::size_t n_buckets = bucket_start.size() - 1;

  const auto ta = a.terms();
  const auto tb = b.terms();
  const std::size_t input_bytes = (a.size() + b.size()) * sizeof(T);
  const unsigned jobs = std::max(1U, options.jobs);
  std::vector<PolyAccumulator<Scalar>> accumulators(std::min<std::size_t>(jobs, n_buckets));

  std::vector<T> out;
  std::vector<std::vector<T>> pending(n_buckets);
  std::vector<char> ready(n_buckets, 0);
  std::size_t next_emit = 0;
  std::size_t pending_terms = 0;
  std::mutex emit_mutex;

  auto emit = [&](std::size_t bucket, std::vector<T>&& chunk, std::uint64_t products) {
    std::lock_guard lock(emit_mutex);
    if (options.stats) options.stats->term_products.fetch_add(products, std::memory_order_relaxed);
    pending_terms += chunk.size();
    pending[bucket] = std::move(chunk);
    ready[bucket] = 1;
    while (next_emit < n_buckets && ready[next_emit]) {
      auto& c = pending[next_emit];
      if (out.capacity() < out.size() + c.size()) {
        const std::size_t wanted = std::max(out.size() + c.size(), out.capacity() * 3 / 2);
        const std::size_t during_growth = input_bytes + (out.size() + wanted + pending_terms) * sizeof(T);
        if (during_growth > options.memory_budget) {
          throw BudgetExceeded("poly_mul", options.memory_budget, during_growth, out.size());
        }
        out.reserve(wanted);
      }
      std::move(c.begin(), c.end(), std::back_inserter(out));
      pending_terms -= c.size();
      std::vector<T>().swap(c);
      ++next_emit;
    }
    std::size_t scratch = 0;
    for (const auto& acc : accumulators) scratch += acc.memory_bytes();
    const std::size_t resident = input_bytes + (out.capacity() + pending_terms) * sizeof(T) + scratch;
    if (resident > options.memory_budget) {
      throw BudgetExceeded("poly_mul", options.memory_budget, resident, out.size());
    }
    if (options.progress) {
      options.progress(Progress{"multiply", next_emit, n_buckets, out.size() + pending_terms});
    }
  };

  parallel_for(n_buckets, jobs, [&](std::size_t bucket, std::size_t worker) {
    auto& acc = accumulators[worker];
    {
      std::lock_guard lock(emit_mutex);
      const std::size_t held = input_bytes + (out.capacity() + pending_terms) * sizeof(T);
      acc.set_limit(held < options.memory_budget ? (options.memory_budget - held) / jobs : 0);
    }
    std::uint64_t products = 0;
    for (std::size_t p = bucket_start[bucket]; p < bucket_start[bucket + 1]; ++p) {
      const auto& ra = ga[pairs[p].ga];
      const auto& rb = gb[pairs[p].gb];
      for (std::uint32_t i = ra.begin; i < ra.end; ++i) {
        const T& x = ta[i];
        for (std::uint32_t j = rb.begin; j < rb.end; ++j) {
          mul_add(acc.at(x.mono * tb[j].mono), x.coeff, tb[j].coeff);
        }
      }
      products += std::uint64_t{ra.end - ra.begin} * (rb.end - rb.begin);
    }
    std::vector<T> chunk;
    chunk.reserve(acc.size());
    acc.drain_sorted(chunk);
    emit(bucket, std::move(chunk), products);
  });

  return SparsePoly<Scalar>::from_canonical(a.n_vars(), std::move(out));
}

/// a^k by iterated multiplication by the base; on_step(j, a^j) is called for
/// every j in 1..k as soon as that power is available.
template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> poly_pow(
    const SparsePoly<Scalar>& a, unsigned k, const ComputeOptions& options = {},
    const std::function<void(unsigned, const SparsePoly<Scalar>&)>& on_step = {}) {
  if (k == 0) throw std::invalid_argument("poly_pow: exponent must be at least 1");
  SparsePoly<Scalar> result = a;
  if (on_step) on_step(1, result);
  for (unsigned j = 2; j <= k; ++j) {
    result = poly_mul(result, a, options);
    if (on_step) on_step(j, result);
  }
  return result;
}

/// Exact evaluation at an integer point.
template <class Scalar>
[[nodiscard]] Scalar evaluate(const SparsePoly<Scalar>& a, std::span<const std::int64_t> point) {
  if (point.size() != a.n_vars()) throw std::invalid_argument("evaluate: point length mismatch");
  std::vector<Scalar> base;
  base.reserve(point.size());
  for (std::int64_t v : point) base.push_back(scalar_from_integer<Scalar>(Integer(v)));
  Scalar total{};
  for (const auto& t : a.terms()) {
    Scalar value = t.coeff;
    for (std::size_t v = 0; v < a.n_vars(); ++v) {
      for (unsigned e = t.mono.exponent(v); e > 0; --e) value *= base[v];
    }
    total += value;
  }
  return total;
}

/// Renames x_i to x_{perm[i]}.
template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> permute_variables(const SparsePoly<Scalar>& a, std::span<const std::size_t> perm) {
  if (perm.size() != a.n_vars()) throw std::invalid_argument("permute_variables: permutation length mismatch");
  std::vector<Term<Scalar>> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < a.n_vars(); ++v) m.set_exponent(perm[v], t.mono.exponent(v));
    out.push_back({m, t.coeff});
  }
  return SparsePoly<Scalar>::from_terms(a.n_vars(), std::move(out));
}

/// Coefficient ring change from the exact integers.
template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> convert_coefficients(const SparsePoly<Integer>& a) {
  std::vector<Term<Scalar>> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) {
    Scalar c = scalar_from_integer<Scalar>(t.coeff);
    if (!is_zero(c)) out.push_back({t.mono, std::move(c)});
  }
  return SparsePoly<Scalar>::from_canonical(a.n_vars(), std::move(out));
}

template <class Scalar>
[[nodiscard]] bool is_homogeneous(const SparsePoly<Scalar>& a, unsigned degree) {
  return std::all_of(a.terms().begin(), a.terms().end(),
                     [degree](const Term<Scalar>& t) { return t.mono.degree() == degree; });
}

}  // namespace gdet

#endif  // GDET_SPARSE_POLY_HPP
