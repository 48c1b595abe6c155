#ifndef GDET_SERIALIZE_HPP
#define GDET_SERIALIZE_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "gdet/compute.hpp"
#include "gdet/sparse_poly.hpp"

namespace gdet {

// Binary layout, little-endian throughout:
//   "GDET" | version u16 | mode u8 | n_vars u8 | term count u64
//   per term, sorted lexicographically by exponent vector:
//     n_vars exponent bytes | sign u8 | magnitude length u32 | magnitude bytes
//   CRC32 (zlib polynomial) of every preceding byte, u32

inline constexpr std::uint16_t kPolyFormatVersion = 1;

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct PolyHeader {
  std::uint16_t version = 0;
  CoefficientMode mode = CoefficientMode::Exact;
  std::size_t n_vars = 0;
  std::uint64_t term_count = 0;
};

template <class Scalar>
inline constexpr CoefficientMode mode_of_v = CoefficientMode::Exact;
template <>
inline constexpr CoefficientMode mode_of_v<ModP61> = CoefficientMode::ModPrime;

template <class Scalar>
void write_poly(std::ostream& os, const SparsePoly<Scalar>& poly);

template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> read_poly(std::istream& is);

/// Reads only the fixed-size header (magic and version are checked).
[[nodiscard]] PolyHeader read_poly_header(std::istream& is);

template <class Scalar>
[[nodiscard]] std::vector<std::uint8_t> serialize(const SparsePoly<Scalar>& poly);

template <class Scalar>
[[nodiscard]] SparsePoly<Scalar> deserialize(std::span<const std::uint8_t> bytes);

}  // namespace gdet

#endif  // GDET_SERIALIZE_HPP
