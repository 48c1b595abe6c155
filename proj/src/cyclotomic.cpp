#include "gdet/cyclotomic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gdet {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact division of integer polynomials by a monic divisor.
Poly divide_monic(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  Poly q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const std::int64_t c = num[k];
    q[k - dn] = c;
    for (std::size_t t = 0; t <= dn; ++t) num[k - dn + t] -= c * den[t];
  }
  for (std::size_t t = 0; t < dn; ++t) {
    if (num[t] != 0) throw std::logic_error("cyclotomic_polynomial: inexact division");
  }
  return q;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(unsigned d) {
  if (d == 0) throw std::invalid_argument("cyclotomic_polynomial: conductor must be positive");
  // x^d - 1 divided by Φ_e for every proper divisor e of d
  Poly p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  for (unsigned e = 1; e < d; ++e) {
    if (d % e == 0) p = divide_monic(p, cyclotomic_polynomial(e));
  }
  return p;
}

CyclotomicField::CyclotomicField(unsigned conductor)
    : conductor_(conductor), phi_(cyclotomic_polynomial(conductor)) {
  degree_ = static_cast<unsigned>(phi_.size() - 1);
  rows_.assign(static_cast<std::size_t>(conductor_) * degree_, 0);
  Poly row(degree_, 0);
  row[0] = 1;
  for (unsigned k = 0; k < conductor_; ++k) {
    std::copy(row.begin(), row.end(), rows_.begin() + static_cast<std::ptrdiff_t>(k * degree_));
    // multiply by ζ and reduce the overflowing ζ^degree with Φ_d (monic)
    const std::int64_t top = row[degree_ - 1];
    for (unsigned t = degree_ - 1; t > 0; --t) row[t] = row[t - 1];
    row[0] = 0;
    for (unsigned t = 0; t < degree_; ++t) row[t] -= top * phi_[t];
  }
}

CyclotomicInt::CyclotomicInt(const CyclotomicField& field, const Integer& rational)
    : field_(&field), coeffs_(field.degree()) {
  coeffs_[0] = rational;
}

CyclotomicInt CyclotomicInt::root_power(const CyclotomicField& field, std::uint64_t k) {
  CyclotomicInt r;
  r.bind(&field);
  const auto row = field.power_row(k);
  for (unsigned t = 0; t < field.degree(); ++t) r.coeffs_[t] = row[t];
  return r;
}

void CyclotomicInt::bind(const CyclotomicField* f) {
  if (field_ == f) return;
  if (field_ != nullptr && f != nullptr) {
    throw std::invalid_argument("CyclotomicInt: operands belong to different fields");
  }
  if (field_ == nullptr) {
    field_ = f;
    coeffs_.assign(f->degree(), Integer{});
  }
}

bool CyclotomicInt::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c.is_zero(); });
}

bool CyclotomicInt::is_rational() const noexcept {
  return coeffs_.size() <= 1 ||
         std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Integer& c) { return c.is_zero(); });
}

Integer CyclotomicInt::rational_part() const { return coeffs_.empty() ? Integer{} : coeffs_[0]; }

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& rhs) {
  if (rhs.field_ == nullptr) return *this;
  bind(rhs.field_);
  for (std::size_t t = 0; t < coeffs_.size(); ++t) coeffs_[t] += rhs.coeffs_[t];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& rhs) {
  if (rhs.field_ == nullptr) return *this;
  bind(rhs.field_);
  for (std::size_t t = 0; t < coeffs_.size(); ++t) coeffs_[t] -= rhs.coeffs_[t];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(const CyclotomicInt& rhs) {
  CyclotomicInt out;
  mul_add(out, *this, rhs);
  if (out.field_ == nullptr && (field_ != nullptr || rhs.field_ != nullptr)) {
    out.bind(field_ != nullptr ? field_ : rhs.field_);
  }
  *this = std::move(out);
  return *this;
}

bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
  if (a.field_ == b.field_) return a.coeffs_ == b.coeffs_;
  if (a.field_ == nullptr) return b.is_zero();
  if (b.field_ == nullptr) return a.is_zero();
  return false;
}

void add_root_multiple(CyclotomicInt& acc, const CyclotomicInt& c, std::uint64_t k) {
  if (c.field_ == nullptr) return;
  acc.bind(c.field_);
  const CyclotomicField& f = *c.field_;
  const unsigned deg = f.degree();
  for (unsigned t = 0; t < deg; ++t) {
    if (c.coeffs_[t].is_zero()) continue;
    const std::uint64_t e = (t + k) % f.conductor();
    if (e < deg) {
      acc.coeffs_[e] += c.coeffs_[t];
      continue;
    }
    const auto row = f.power_row(e);
    for (unsigned s = 0; s < deg; ++s) {
      if (row[s] != 0) mul_add(acc.coeffs_[s], c.coeffs_[t], Integer(row[s]));
    }
  }
}

void mul_add(CyclotomicInt& acc, const CyclotomicInt& a, const CyclotomicInt& b) {
  if (a.field_ == nullptr || b.field_ == nullptr) return;
  if (a.field_ != b.field_) throw std::invalid_argument("CyclotomicInt: operands belong to different fields");
  acc.bind(a.field_);
  const unsigned deg = a.field_->degree();
  for (unsigned i = 0; i < deg; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    CyclotomicInt shifted;
    shifted.bind(a.field_);
    for (unsigned j = 0; j < deg; ++j) shifted.coeffs_[j] = a.coeffs_[i] * b.coeffs_[j];
    add_root_multiple(acc, shifted, i);
  }
}

}  // namespace gdet
