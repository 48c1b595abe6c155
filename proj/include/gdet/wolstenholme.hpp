#ifndef GDET_WOLSTENHOLME_HPP
#define GDET_WOLSTENHOLME_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gdet/integer.hpp"

namespace gdet {

/// C(2p-1, p-1) mod p^e for prime p and 1 <= e <= 4.
[[nodiscard]] u128 central_binom_mod(std::uint64_t p, unsigned e);

/// sum_{i=1}^{p-1} i^{-1} mod p^e for prime p.
[[nodiscard]] u128 harmonic_mod(std::uint64_t p, unsigned e);

/// (p - 1 + C(2p-1, p-1)) / p, exactly.
[[nodiscard]] BigInt n_theta_via_identity(std::uint64_t p);

struct PrimeReport {
  std::uint64_t p = 0;
  u128 residue_p2 = 0;
  u128 residue_p3 = 0;
  u128 residue_p4 = 0;
  u128 n_theta_residue_p3 = 0;  // (p - 1 + C(2p-1, p-1)) / p mod p^3
  std::optional<u128> harmonic_residue_p3;
  bool is_wolstenholme_prime = false;           // residue_p4 == 1
  bool satisfies_wolstenholme_theorem = false;  // residue_p3 == 1
  std::string note;
};

/// Throws std::invalid_argument for composite p.
[[nodiscard]] PrimeReport classify_prime(std::uint64_t p, bool with_harmonic = true);

struct ScanOptions {
  unsigned jobs = 1;
  std::optional<std::filesystem::path> checkpoint;
  std::size_t checkpoint_every = 1000;  // primes per chunk
  bool resume = false;
  /// Harmonic residues are computed for Wolstenholme candidates and every
  /// harmonic_sample-th prime (0 disables sampling).
  std::size_t harmonic_sample = 0;
  std::function<void(std::uint64_t last_prime, std::size_t done, std::size_t total)> progress;
};

struct ScanCheckpoint {
  std::uint64_t last_prime = 0;
  std::uint64_t count_found = 0;
};

struct ScanResult {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<PrimeReport> reports;  // ascending p
  std::vector<std::uint64_t> wolstenholme_primes;
  std::optional<ScanCheckpoint> resumed_from;
  /// Number of primes p >= 5 whose residue mod p^3 was not 1.
  std::size_t theorem_failures = 0;
};

/// Classifies every prime in [lo, hi]. Output is ordered by p and does not
/// depend on jobs or checkpoint_every.
[[nodiscard]] ScanResult scan_range(std::uint64_t lo, std::uint64_t hi, const ScanOptions& options = {});

[[nodiscard]] std::optional<ScanCheckpoint> read_checkpoint(const std::filesystem::path& path);
void write_checkpoint(const std::filesystem::path& path, const ScanCheckpoint& cp);

}  // namespace gdet

#endif  // GDET_WOLSTENHOLME_HPP
