#ifndef GDET_CYCLOTOMIC_HPP
#define GDET_CYCLOTOMIC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "gdet/integer.hpp"

namespace gdet {

/// Coefficients of the d-th cyclotomic polynomial, constant term first.
[[nodiscard]] std::vector<std::int64_t> cyclotomic_polynomial(unsigned d);

/// Z[ζ_d] with power basis 1, ζ, ..., ζ^{φ(d)-1}.
class CyclotomicField {
public:
  explicit CyclotomicField(unsigned conductor);

  [[nodiscard]] unsigned conductor() const noexcept { return conductor_; }
  [[nodiscard]] unsigned degree() const noexcept { return degree_; }
  [[nodiscard]] const std::vector<std::int64_t>& minimal_polynomial() const noexcept { return phi_; }

  /// ζ^k reduced to the power basis, for any k (taken mod d).
  [[nodiscard]] std::span<const std::int64_t> power_row(std::uint64_t k) const noexcept {
    return {rows_.data() + (k % conductor_) * degree_, degree_};
  }

private:
  unsigned conductor_;
  unsigned degree_;
  std::vector<std::int64_t> phi_;
  std::vector<std::int64_t> rows_;
};

/// Element of Z[ζ_d], canonically reduced modulo Φ_d.
///
/// A default-constructed value is zero and not yet bound to a field; it takes
/// the field of the first operand combined into it. The field must outlive
/// every element that refers to it.
class CyclotomicInt {
public:
  CyclotomicInt() = default;
  CyclotomicInt(const CyclotomicField& field, const Integer& rational);

  static CyclotomicInt root_power(const CyclotomicField& field, std::uint64_t k);

  [[nodiscard]] const CyclotomicField* field() const noexcept { return field_; }
  [[nodiscard]] std::span<const Integer> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] bool is_zero() const noexcept;
  /// True when the value lies in Z (all non-constant basis coefficients vanish).
  [[nodiscard]] bool is_rational() const noexcept;
  [[nodiscard]] Integer rational_part() const;

  CyclotomicInt& operator+=(const CyclotomicInt& rhs);
  CyclotomicInt& operator-=(const CyclotomicInt& rhs);
  CyclotomicInt& operator*=(const CyclotomicInt& rhs);
  friend CyclotomicInt operator*(CyclotomicInt a, const CyclotomicInt& b) { return a *= b; }
  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b);

  /// acc += c * ζ^k
  friend void add_root_multiple(CyclotomicInt& acc, const CyclotomicInt& c, std::uint64_t k);
  friend void mul_add(CyclotomicInt& acc, const CyclotomicInt& a, const CyclotomicInt& b);

private:
  void bind(const CyclotomicField* f);

  const CyclotomicField* field_ = nullptr;
  std::vector<Integer> coeffs_;
};

[[nodiscard]] inline bool is_zero(const CyclotomicInt& v) noexcept { return v.is_zero(); }

}  // namespace gdet

#endif  // GDET_CYCLOTOMIC_HPP
