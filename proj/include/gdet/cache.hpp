#ifndef GDET_CACHE_HPP
#define GDET_CACHE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gdet/compute.hpp"
#include "gdet/group.hpp"
#include "gdet/sparse_poly.hpp"

namespace gdet {

struct CacheKey {
  std::string group;
  std::optional<GapId> gap_id;
  unsigned k = 1;
  CoefficientMode mode = CoefficientMode::Exact;

  [[nodiscard]] static CacheKey for_group(const FiniteGroup& g, unsigned k, CoefficientMode mode);
};

/// Directory of serialized powers Θ(G)^k, one file per key. Readers take a
/// shared flock and writers an exclusive one on "<file>.lock"; files are
/// written to a temporary name and renamed into place.
class PolyCache {
public:
  /// Creates the directory if needed; throws std::runtime_error if it cannot.
  explicit PolyCache(std::filesystem::path dir);

  [[nodiscard]] const std::filesystem::path& directory() const noexcept { return dir_; }
  [[nodiscard]] std::filesystem::path path_for(const CacheKey& key) const;

  /// Term count from the file header, without reading the terms.
  [[nodiscard]] std::optional<std::uint64_t> peek_count(const CacheKey& key) const;

  /// Full read with CRC check; a damaged entry is reported as missing.
  template <class Scalar>
  [[nodiscard]] std::optional<SparsePoly<Scalar>> load(const CacheKey& key) const;

  template <class Scalar>
  void store(const CacheKey& key, const SparsePoly<Scalar>& poly) const;

  /// Keys of every entry in the directory, parsed back from file names.
  [[nodiscard]] std::vector<CacheKey> entries() const;

private:
  std::filesystem::path dir_;
};

}  // namespace gdet

#endif  // GDET_CACHE_HPP
