#ifndef GDET_COMPUTE_HPP
#define GDET_COMPUTE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace gdet {

enum class CoefficientMode { Exact, ModPrime };

[[nodiscard]] std::string_view to_string(CoefficientMode mode) noexcept;
[[nodiscard]] CoefficientMode parse_coefficient_mode(std::string_view text);

/// 8 GiB, clamped to 80% of physical memory on smaller machines.
[[nodiscard]] std::size_t default_memory_budget();

/// Counters shared by the operations of one computation.
struct ComputeStats {
  std::atomic<std::uint64_t> multiplications{0};
  std::atomic<std::uint64_t> term_products{0};
};

struct Progress {
  std::string_view stage;
  std::size_t done = 0;
  std::size_t total = 0;
  std::uint64_t terms = 0;
};

struct ComputeOptions {
  std::size_t memory_budget = default_memory_budget();
  unsigned jobs = 1;
  ComputeStats* stats = nullptr;
  std::function<void(const Progress&)> progress;
};

/// Raised when an operation's estimated resident size would pass the budget.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(std::string_view what, std::size_t budget, std::size_t required, std::uint64_t partial_terms);

  [[nodiscard]] std::size_t budget() const noexcept { return budget_; }
  [[nodiscard]] std::size_t required() const noexcept { return required_; }
  [[nodiscard]] std::uint64_t partial_terms() const noexcept { return partial_terms_; }

private:
  std::size_t budget_;
  std::size_t required_;
  std::uint64_t partial_terms_;
};

/// Runs body(i) for i in [0, count) on up to `jobs` threads with dynamic
/// scheduling. The first exception thrown by any task is rethrown after all
/// workers have stopped.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body) {
  if (count == 0) return;
  const std::size_t workers = std::min<std::size_t>(jobs == 0 ? 1 : jobs, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, std::size_t{0});
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&](std::size_t worker) {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i, worker);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace gdet

#endif  // GDET_COMPUTE_HPP
