#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>

namespace zerosum {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

/// Shared node budget and deadline for one logical search. Thread-safe;
/// workers charge nodes in batches through a NodeMeter.
class SearchControl {
public:
  using Clock = std::chrono::steady_clock;

  explicit SearchControl(
      std::uint64_t node_budget = kDefaultNodeBudget,
      std::optional<std::chrono::milliseconds> timeout = std::nullopt)
      : budget_(node_budget) {
    if (timeout)
      deadline_ = Clock::now() + *timeout;
  }

  SearchControl(const SearchControl &) = delete;
  SearchControl &operator=(const SearchControl &) = delete;

  /// Adds `n` nodes; returns false once the budget or deadline is gone.
  bool charge(std::uint64_t n) {
    auto total = nodes_.fetch_add(n, std::memory_order_relaxed) + n;
    if (total > budget_ || (deadline_ && Clock::now() > *deadline_))
      stopped_.store(true, std::memory_order_relaxed);
    return !stopped();
  }

  bool stopped() const { return stopped_.load(std::memory_order_relaxed); }
  std::uint64_t nodes() const { return nodes_.load(std::memory_order_relaxed); }
  std::uint64_t budget() const { return budget_; }

private:
  std::uint64_t budget_;
  std::optional<Clock::time_point> deadline_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stopped_{false};
};

/// Per-thread node counter flushing into a SearchControl every 1024 steps.
class NodeMeter {
public:
  explicit NodeMeter(SearchControl &control) : control_(control) {}
  ~NodeMeter() { flush(); }
  NodeMeter(const NodeMeter &) = delete;
  NodeMeter &operator=(const NodeMeter &) = delete;

  /// Returns false when the search must stop.
  bool step() {
    if (++pending_ < 1024)
      return !control_.stopped();
    return flush();
  }
  bool flush() {
    auto n = pending_;
    pending_ = 0;
    return control_.charge(n);
  }

private:
  SearchControl &control_;
  std::uint64_t pending_ = 0;
};

} // namespace zerosum
