#ifndef GDET_CLI_VERIFY_HPP
#define GDET_CLI_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gdet/compute.hpp"

namespace gdet::cli {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// N(Θ(C_n)^k) keyed by (n, k).
using CyclicCounts = std::map<std::pair<std::uint64_t, unsigned>, std::uint64_t>;

[[nodiscard]] std::vector<CheckResult> verify_theorems(const ComputeOptions& options);
[[nodiscard]] std::vector<CheckResult> verify_questions(const CyclicCounts& counts, const ComputeOptions& options);
[[nodiscard]] std::vector<CheckResult> verify_oracle();
[[nodiscard]] std::vector<CheckResult> verify_crossval(std::size_t n_max, const ComputeOptions& options);

/// n = 1 counts as a prime power.
[[nodiscard]] bool is_prime_power(std::uint64_t n);

/// One PASS/FAIL line per check; returns true when all passed.
bool report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace gdet::cli

#endif  // GDET_CLI_VERIFY_HPP
