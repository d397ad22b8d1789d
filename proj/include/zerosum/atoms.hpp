#pragma once

#include "element_set.hpp"
#include "error.hpp"
#include "group.hpp"
#include "search_control.hpp"
#include "sequence.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace zerosum {

using Multiplicities = std::vector<std::int64_t>;

/// The atoms A(G0) over a support up to a length bound, grouped by length
/// and sorted lexicographically within each length.
struct AtomSet {
  Support support;
  std::int64_t max_len = 0;
  /// False when the node budget or deadline cut the enumeration short.
  bool complete = true;
  /// by_length[l] holds the atoms of length l, for l in [0, max_len].
  std::vector<std::vector<Multiplicities>> by_length;

  std::size_t count() const {
    std::size_t n = 0;
    for (const auto &bucket : by_length)
      n += bucket.size();
    return n;
  }

  /// Longest atom length present, or 0.
  std::int64_t longest() const {
    for (auto l = static_cast<std::int64_t>(by_length.size()); l-- > 0;)
      if (!by_length[static_cast<std::size_t>(l)].empty())
        return l;
    return 0;
  }

  std::vector<ZSequence> sequences() const {
    std::vector<ZSequence> out;
    for (const auto &bucket : by_length)
      for (const auto &m : bucket)
        out.emplace_back(support, m);
    return out;
  }
};

namespace detail {

// DFS over zero-sum free sequences T with nondecreasing support positions.
// A node closes to the atom T * (-sigma(T)) when -sigma(T) is at a position
// >= every position used in T; removing one copy of the highest-positioned
// element of an atom recovers its unique generating T.
class AtomSearch {
public:
  AtomSearch(const Support &support, std::int64_t max_len,
             SearchControl &control)
      : support_(support), max_len_(max_len), meter_(control),
        order_(static_cast<std::size_t>(support.group().order())),
        mult_(support.size(), 0),
        sums_(static_cast<std::size_t>(std::max<std::int64_t>(max_len, 1)),
              ElementSet(order_)),
        by_length_(static_cast<std::size_t>(max_len + 1)) {}

  bool run() {
    if (support_.empty() || max_len_ < 1)
      return true;
    visit(0, 0, 0);
    for (auto &bucket : by_length_)
      std::sort(bucket.begin(), bucket.end());
    meter_.flush();
    return !aborted_;
  }

  std::vector<std::vector<Multiplicities>> take() {
    return std::move(by_length_);
  }

private:
  void visit(std::int64_t len, std::size_t last, std::size_t sum) {
    if (aborted_ || !meter_.step()) {
      aborted_ = true;
      return;
    }
    if (len > 0 && len + 1 <= max_len_) {
      auto pos = support_.position_of(support_.group().neg_index(sum));
      if (pos >= 0 && static_cast<std::size_t>(pos) >= last) {
        ++mult_[static_cast<std::size_t>(pos)];
        by_length_[static_cast<std::size_t>(len + 1)].push_back(mult_);
        --mult_[static_cast<std::size_t>(pos)];
      }
    }
    if (len + 1 > max_len_ - 1)
      return;
    const auto &cur = sums_[static_cast<std::size_t>(len)];
    auto &next = sums_[static_cast<std::size_t>(len + 1)];
    for (auto j = last; j < support_.size(); ++j) {
      if (cur.test(support_.neg_index(j)))
        continue;
      ElementSet::extend(cur, next, support_.shift(j),
                         support_.group_index(j));
      ++mult_[j];
      visit(len + 1, j, support_.shift(j)[sum]);
      --mult_[j];
      if (aborted_)
        return;
    }
  }

  const Support &support_;
  std::int64_t max_len_;
  NodeMeter meter_;
  std::size_t order_;
  Multiplicities mult_;
  std::vector<ElementSet> sums_;
  std::vector<std::vector<Multiplicities>> by_length_;
  bool aborted_ = false;
};

} // namespace detail

/// Every atom over `support` of length <= max_len. When `control` runs out
/// the returned set is partial and flagged incomplete.
inline AtomSet enumerate_atoms(const Support &support, std::int64_t max_len,
                               SearchControl &control) {
  if (max_len < 1)
    throw Error("max_len must be at least 1");
  detail::AtomSearch search(support, max_len, control);
  AtomSet out{support, max_len, true, {}};
  out.complete = search.run();
  out.by_length = search.take();
  return out;
}

inline AtomSet enumerate_atoms(const Support &support, std::int64_t max_len) {
  SearchControl control;
  return enumerate_atoms(support, max_len, control);
}

struct ZeroSumFreeResult {
  std::int64_t length = 0;
  /// A zero-sum free sequence of that length over G \ {0}.
  Multiplicities witness;
  bool complete = true;
  std::uint64_t nodes = 0;
};

namespace detail {

// Longest zero-sum free sequence over a full support. Every appended term
// strictly grows Sigma(T) inside G \ {0}, so a node can gain at most
// |G| - 1 - |Sigma(T)| further terms.
class ZeroSumFreeSearch {
public:
  ZeroSumFreeSearch(const Support &support, SearchControl &control)
      : support_(support), meter_(control),
        order_(static_cast<std::size_t>(support.group().order())),
        mult_(support.size(), 0) {
    sums_.emplace_back(order_);
    counts_.push_back(0);
  }

  bool run() {
    visit(0, 0);
    meter_.flush();
    return !aborted_;
  }

  std::int64_t best = 0;
  Multiplicities witness;

private:
  void visit(std::int64_t len, std::size_t last) {
    if (aborted_ || !meter_.step()) {
      aborted_ = true;
      return;
    }
    if (len > best) {
      best = len;
      witness = mult_;
    }
    auto depth = static_cast<std::size_t>(len);
    auto headroom = static_cast<std::int64_t>(order_) - 1 -
                    static_cast<std::int64_t>(counts_[depth]);
    if (len + headroom <= best)
      return;
    if (sums_.size() <= depth + 1) {
      sums_.emplace_back(order_);
      counts_.push_back(0);
    }
    for (auto j = last; j < support_.size(); ++j) {
      if (sums_[depth].test(support_.neg_index(j)))
        continue;
      ElementSet::extend(sums_[depth], sums_[depth + 1], support_.shift(j),
                         support_.group_index(j));
      counts_[depth + 1] = sums_[depth + 1].count();
      ++mult_[j];
      visit(len + 1, j);
      --mult_[j];
      if (aborted_)
        return;
      headroom = static_cast<std::int64_t>(order_) - 1 -
                 static_cast<std::int64_t>(counts_[depth]);
      if (len + headroom <= best)
        return;
    }
  }

  const Support &support_;
  NodeMeter meter_;
  std::size_t order_;
  Multiplicities mult_;
  std::vector<ElementSet> sums_;
  std::vector<std::size_t> counts_;
  bool aborted_ = false;
};

inline void require_enumerable(const Group &g, std::size_t cap) {
  if (g.order() > static_cast<std::int64_t>(cap))
    throw GroupTooLarge("group " + g.to_string() + " has order " +
                        std::to_string(g.order()) + ", above the cap of " +
                        std::to_string(cap));
}

} // namespace detail

/// Brute-force maximum length of a zero-sum free sequence over G \ {0}.
/// Reports a partial result with complete=false instead of throwing.
inline ZeroSumFreeResult
zero_sum_free_search(const Group &g, SearchControl &control,
                     std::size_t cap = kDefaultElementCap) {
  detail::require_enumerable(g, cap);
  auto support = Support::all_nonzero(g, cap);
  detail::ZeroSumFreeSearch search(support, control);
  ZeroSumFreeResult out;
  out.complete = search.run();
  out.length = search.best;
  out.witness = search.witness;
  out.witness.resize(support.size(), 0);
  out.nodes = control.nodes();
  return out;
}

inline std::int64_t
max_zero_sum_free_length(const Group &g,
                         std::uint64_t node_budget = kDefaultNodeBudget,
                         std::size_t cap = kDefaultElementCap) {
  SearchControl control(node_budget);
  auto r = zero_sum_free_search(g, control, cap);
  if (!r.complete)
    throw BudgetExceeded("zero-sum free search on " + g.to_string() +
                             " exhausted its budget",
                         r.length);
  return r.length;
}

/// D(G): one more than the longest zero-sum free sequence.
inline std::int64_t davenport(const Group &g,
                              std::uint64_t node_budget = kDefaultNodeBudget,
                              std::size_t cap = kDefaultElementCap) {
  try {
    return max_zero_sum_free_length(g, node_budget, cap) + 1;
  } catch (const BudgetExceeded &e) {
    throw BudgetExceeded(e.what(), e.best_partial + 1);
  }
}

/// D(G0): the longest atom over the support.
inline std::int64_t
davenport_of_support(const Support &support,
                     std::uint64_t node_budget = kDefaultNodeBudget) {
  if (support.empty())
    throw Error("davenport_of_support needs a nonempty support");
  SearchControl control(node_budget);
  // D(G0) <= D(G) <= |G|
  auto atoms = enumerate_atoms(support, support.group().order(), control);
  if (!atoms.complete)
    throw BudgetExceeded("atom enumeration exhausted its budget",
                         atoms.longest());
  return atoms.longest();
}

} // namespace zerosum
