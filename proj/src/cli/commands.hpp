#ifndef GDET_CLI_COMMANDS_HPP
#define GDET_CLI_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gdet/compute.hpp"
#include "gdet/group.hpp"

namespace gdet::cli {

enum class OutputFormat { Csv, Json, Human };

struct RunConfig {
  std::optional<CoefficientMode> mode;  // unset: default_mode_for_order
  std::size_t memory_budget = default_memory_budget();
  std::optional<std::filesystem::path> cache_dir;
  OutputFormat format = OutputFormat::Human;
  unsigned jobs = 1;
  bool quiet = false;
};

inline constexpr std::size_t kMinimumBudget = std::size_t{64} << 20;

struct TermCell {
  std::uint64_t value = 0;
  bool exact = true;
  double failure_bound = 0.0;
};

struct TermsRow {
  std::uint64_t n = 0;
  std::vector<std::optional<TermCell>> cells;  // cells[k-1]
  std::optional<std::string> exhausted;
};

/// N(Θ(G)^k) for k = 1..k_max, reusing and filling the cache when one is
/// configured. A budget stop leaves the remaining cells empty.
[[nodiscard]] TermsRow compute_terms_row(const FiniteGroup& g, unsigned k_max, const RunConfig& config,
                                         ComputeStats* stats = nullptr, std::ostream* progress = nullptr);

void write_terms_table(std::ostream& out, const std::vector<TermsRow>& rows, OutputFormat format);

/// Parses arguments (without the program name) and runs one command.
/// Returns 0 ok, 1 verification failure, 2 usage error, 3 resource exhaustion.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gdet::cli

#endif  // GDET_CLI_COMMANDS_HPP
