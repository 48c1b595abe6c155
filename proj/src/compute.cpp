#include "gdet/compute.hpp"

#include <unistd.h>

#include <sstream>

namespace gdet {

std::string_view to_string(CoefficientMode mode) noexcept {
  return mode == CoefficientMode::Exact ? "exact" : "modprime";
}

CoefficientMode parse_coefficient_mode(std::string_view text) {
  if (text == "exact") return CoefficientMode::Exact;
  if (text == "modprime") return CoefficientMode::ModPrime;
  throw std::invalid_argument("unknown coefficient mode: " + std::string(text));
}

std::size_t default_memory_budget() {
  constexpr std::size_t kDefault = std::size_t{8} << 30;
  const long pages = sysconf(_SC_PHYS_PAGES);
  const long page_size = sysconf(_SC_PAGE_SIZE);
  if (pages <= 0 || page_size <= 0) return kDefault;
  const std::size_t physical = static_cast<std::size_t>(pages) * static_cast<std::size_t>(page_size);
  return std::min(kDefault, physical / 10 * 8);
}

namespace {

std::string budget_message(std::string_view what, std::size_t budget, std::size_t required,
                           std::uint64_t partial_terms) {
  std::ostringstream os;
  os << what << ": memory budget of " << budget << " bytes exceeded (estimated " << required
     << " bytes needed, " << partial_terms << " terms completed)";
  return os.str();
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::string_view what, std::size_t budget, std::size_t required,
                               std::uint64_t partial_terms)
    : std::runtime_error(budget_message(what, budget, required, partial_terms)),
      budget_(budget),
      required_(required),
      partial_terms_(partial_terms) {}

}  // namespace gdet
