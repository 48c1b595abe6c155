#include "gdet/serialize.hpp"

#include <zlib.h>

#include <array>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace gdet {

namespace {

constexpr std::array<char, 4> kMagic = {'G', 'D', 'E', 'T'};

class CrcWriter {
public:
  explicit CrcWriter(std::ostream& os) : os_(os) { buffer_.reserve(kChunk); }

  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    buffer_.insert(buffer_.end(), p, p + n);
    if (buffer_.size() >= kChunk) flush();
  }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }

  void finish() {
    flush();
    std::array<std::uint8_t, 4> out{};
    const auto c = static_cast<std::uint32_t>(crc_);
    for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>(c >> (8 * i));
    os_.write(reinterpret_cast<const char*>(out.data()), 4);
    if (!os_) throw std::runtime_error("write_poly: output stream failure");
  }

private:
  static constexpr std::size_t kChunk = 1 << 16;

  void le(std::uint64_t v, int width) {
    std::array<std::uint8_t, 8> b{};
    for (int i = 0; i < width; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    bytes(b.data(), static_cast<std::size_t>(width));
  }
  void flush() {
    if (buffer_.empty()) return;
    crc_ = crc32(crc_, buffer_.data(), static_cast<uInt>(buffer_.size()));
    os_.write(reinterpret_cast<const char*>(buffer_.data()), static_cast<std::streamsize>(buffer_.size()));
    buffer_.clear();
  }

  std::ostream& os_;
  std::vector<std::uint8_t> buffer_;
  uLong crc_ = crc32(0L, Z_NULL, 0);
};

class CrcReader {
public:
  explicit CrcReader(std::istream& is) : is_(is) {}

  void bytes(void* out, std::size_t n) {
    is_.read(static_cast<char*>(out), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(is_.gcount()) != n) throw FormatError("poly file truncated");
    crc_ = crc32(crc_, static_cast<const Bytef*>(out), static_cast<uInt>(n));
  }
  std::uint8_t u8() {
    std::uint8_t v = 0;
    bytes(&v, 1);
    return v;
  }
  std::uint64_t le(int width) {
    std::array<std::uint8_t, 8> b{};
    bytes(b.data(), static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = width - 1; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
  }
  [[nodiscard]] std::uint32_t crc() const { return static_cast<std::uint32_t>(crc_); }
  std::istream& stream() { return is_; }

private:
  std::istream& is_;
  uLong crc_ = crc32(0L, Z_NULL, 0);
};

PolyHeader read_header_from(CrcReader& r) {
  std::array<char, 4> magic{};
  r.bytes(magic.data(), 4);
  if (magic != kMagic) throw FormatError("poly file: bad magic");
  PolyHeader h;
  h.version = static_cast<std::uint16_t>(r.le(2));
  if (h.version != kPolyFormatVersion) {
    throw FormatError("poly file: unsupported version " + std::to_string(h.version));
  }
  const std::uint8_t mode = r.u8();
  if (mode > 1) throw FormatError("poly file: unknown coefficient mode tag");
  h.mode = mode == 0 ? CoefficientMode::Exact : CoefficientMode::ModPrime;
  h.n_vars = r.u8();
  if (h.n_vars == 0 || h.n_vars > Monomial::kMaxVars) throw FormatError("poly file: bad variable count");
  h.term_count = r.le(8);
  return h;
}

std::vector<std::uint8_t> magnitude_of(const Integer& c) { return c.magnitude_bytes(); }

std::vector<std::uint8_t> magnitude_of(ModP61 c) {
  std::vector<std::uint8_t> out;
  for (std::uint64_t v = c.value; v != 0; v >>= 8) out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  return out;
}

bool is_negative(const Integer& c) { return c.sign() < 0; }
bool is_negative(ModP61) { return false; }

template <class Scalar>
Scalar decode_coeff(bool negative, const std::vector<std::uint8_t>& mag);

template <>
Integer decode_coeff<Integer>(bool negative, const std::vector<std::uint8_t>& mag) {
  return Integer::from_magnitude(negative, mag);
}

template <>
ModP61 decode_coeff<ModP61>(bool negative, const std::vector<std::uint8_t>& mag) {
  if (negative || mag.size() > 8) throw FormatError("poly file: invalid modprime coefficient");
  std::uint64_t v = 0;
  for (std::size_t i = mag.size(); i-- > 0;) v = (v << 8) | mag[i];
  if (v >= ModP61::kModulus) throw FormatError("poly file: modprime coefficient out of range");
  ModP61 r;
  r.value = v;
  return r;
}

}  // namespace

template <class Scalar>
void write_poly(std::ostream& os, const SparsePoly<Scalar>& poly) {
  CrcWriter w(os);
  w.bytes(kMagic.data(), 4);
  w.u16(kPolyFormatVersion);
  w.u8(mode_of_v<Scalar> == CoefficientMode::Exact ? 0 : 1);
  w.u8(static_cast<std::uint8_t>(poly.n_vars()));
  w.u64(poly.size());
  std::array<std::uint8_t, Monomial::kMaxVars> exps{};
  for (const auto& t : poly.terms()) {
    for (std::size_t v = 0; v < poly.n_vars(); ++v) exps[v] = static_cast<std::uint8_t>(t.mono.exponent(v));
    w.bytes(exps.data(), poly.n_vars());
    const auto mag = magnitude_of(t.coeff);
    w.u8(is_negative(t.coeff) ? 1 : 0);
    w.u32(static_cast<std::uint32_t>(mag.size()));
    w.bytes(mag.data(), mag.size());
  }
  w.finish();
}

template <class Scalar>
SparsePoly<Scalar> read_poly(std::istream& is) {
  CrcReader r(is);
  const PolyHeader h = read_header_from(r);
  if (h.mode != mode_of_v<Scalar>) throw FormatError("poly file: coefficient mode mismatch");
  std::vector<Term<Scalar>> terms;
  terms.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(h.term_count, 1U << 20)));
  std::array<std::uint8_t, Monomial::kMaxVars> exps{};
  std::vector<std::uint8_t> mag;
  for (std::uint64_t i = 0; i < h.term_count; ++i) {
    r.bytes(exps.data(), h.n_vars);
    Monomial m;
    for (std::size_t v = 0; v < h.n_vars; ++v) m.set_exponent(v, exps[v]);
    const std::uint8_t sign = r.u8();
    if (sign > 1) throw FormatError("poly file: bad sign byte");
    const auto len = static_cast<std::size_t>(r.le(4));
    if (len > (std::size_t{1} << 30)) throw FormatError("poly file: coefficient too long");
    mag.resize(len);
    if (len != 0) r.bytes(mag.data(), len);
    if (len == 0 || mag.back() == 0) throw FormatError("poly file: non-canonical coefficient");
    if (!terms.empty() && !(terms.back().mono < m)) throw FormatError("poly file: terms not sorted");
    terms.push_back({m, decode_coeff<Scalar>(sign == 1, mag)});
  }
  const std::uint32_t expected = r.crc();
  std::array<std::uint8_t, 4> tail{};
  is.read(reinterpret_cast<char*>(tail.data()), 4);
  if (is.gcount() != 4) throw FormatError("poly file truncated");
  std::uint32_t stored = 0;
  for (int i = 3; i >= 0; --i) stored = (stored << 8) | tail[static_cast<std::size_t>(i)];
  if (stored != expected) throw FormatError("poly file: checksum mismatch");
  return SparsePoly<Scalar>::from_canonical(h.n_vars, std::move(terms));
}

PolyHeader read_poly_header(std::istream& is) {
  CrcReader r(is);
  return read_header_from(r);
}

template <class Scalar>
std::vector<std::uint8_t> serialize(const SparsePoly<Scalar>& poly) {
  std::ostringstream os(std::ios::binary);
  write_poly(os, poly);
  const std::string s = os.str();
  return {s.begin(), s.end()};
}

template <class Scalar>
SparsePoly<Scalar> deserialize(std::span<const std::uint8_t> bytes) {
  std::istringstream is(std::string(bytes.begin(), bytes.end()), std::ios::binary);
  auto poly = read_poly<Scalar>(is);
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("poly file: trailing bytes");
  return poly;
}

template void write_poly(std::ostream&, const SparsePoly<Integer>&);
template void write_poly(std::ostream&, const SparsePoly<ModP61>&);
template SparsePoly<Integer> read_poly<Integer>(std::istream&);
template SparsePoly<ModP61> read_poly<ModP61>(std::istream&);
template std::vector<std::uint8_t> serialize(const SparsePoly<Integer>&);
template std::vector<std::uint8_t> serialize(const SparsePoly<ModP61>&);
template SparsePoly<Integer> deserialize<Integer>(std::span<const std::uint8_t>);
template SparsePoly<ModP61> deserialize<ModP61>(std::span<const std::uint8_t>);

}  // namespace gdet
