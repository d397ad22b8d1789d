#pragma once

#include "element_set.hpp"
#include "error.hpp"
#include "group.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace zerosum {

inline constexpr std::int64_t kDefaultSequenceCap = 64;

/// Ordered set G0 of distinct nonzero elements of one group.
///
/// The identity is excluded: its only atom is the singleton "0", which is
/// orthogonal to every other atom and never changes the separating status
/// of a longer atom. Cheap to copy; contents are shared and immutable.
class Support {
public:
  Support(Group group, std::vector<GroupElement> elements)
      : data_(std::make_shared<Data>(std::move(group), std::move(elements))) {
    const auto &d = *data_;
    for (std::size_t i = 0; i < d.elements.size(); ++i) {
      const auto &e = d.elements[i];
      if (!(e.group() == d.group))
        throw GroupMismatch("support element " + e.to_string() +
                            " is not in group " + d.group.to_string());
      if (e.is_zero())
        throw Error("the identity cannot be part of a support");
      for (std::size_t j = 0; j < i; ++j)
        if (d.elements[j] == e)
          throw Error("duplicate support element " + e.to_string());
    }
  }

  /// Support of all nonzero elements of g, in lexicographic order.
  static Support all_nonzero(const Group &g,
                             std::size_t cap = kDefaultElementCap) {
    auto elems = enumerate_elements(g, cap);
    elems.erase(elems.begin());
    return Support(g, std::move(elems));
  }

  /// Support built from lexicographic group indices.
  static Support from_indices(const Group &g,
                              std::span<const std::size_t> indices) {
    std::vector<GroupElement> elems;
    elems.reserve(indices.size());
    for (auto i : indices)
      elems.push_back(g.element_at(i));
    return Support(g, std::move(elems));
  }

  const Group &group() const { return data_->group; }
  std::size_t size() const { return data_->elements.size(); }
  bool empty() const { return data_->elements.empty(); }
  const GroupElement &operator[](std::size_t i) const {
    return data_->elements[i];
  }
  std::span<const GroupElement> elements() const { return data_->elements; }

  /// Lexicographic group index of the i-th support element.
  std::size_t group_index(std::size_t i) const {
    return tables().group_index[i];
  }
  /// Position of group index x in this support, or -1.
  std::int32_t position_of(std::size_t x) const {
    return tables().position[x];
  }
  /// Translation table x -> x + (i-th element), over group indices.
  std::span<const std::uint32_t> shift(std::size_t i) const {
    const auto &t = tables();
    return std::span<const std::uint32_t>(t.shift).subspan(i * t.order,
                                                           t.order);
  }
  std::size_t neg_index(std::size_t i) const { return tables().neg[i]; }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i)
        out += ' ';
      out += (*this)[i].to_string();
    }
    return out + "}";
  }

  friend bool operator==(const Support &a, const Support &b) {
    return a.data_ == b.data_ ||
           (a.group() == b.group() && a.data_->elements == b.data_->elements);
  }

private:
  struct Tables {
    std::size_t order = 0;
    std::vector<std::size_t> group_index;
    std::vector<std::int32_t> position;
    std::vector<std::uint32_t> shift;
    std::vector<std::size_t> neg;
  };
  struct Data {
    Data(Group g, std::vector<GroupElement> e)
        : group(std::move(g)), elements(std::move(e)) {}
    Group group;
    std::vector<GroupElement> elements;
    mutable std::once_flag once;
    mutable Tables tables;
  };

  // Lookup tables are built on first use; formula-only callers over huge
  // groups never pay for them.
  const Tables &tables() const {
    const auto &d = *data_;
    std::call_once(d.once, [&d] {
      if (d.group.order() > static_cast<std::int64_t>(1) << 24)
        throw GroupTooLarge("group " + d.group.to_string() +
                            " is too large for indexed arithmetic");
      auto &t = d.tables;
      t.order = static_cast<std::size_t>(d.group.order());
      t.position.assign(t.order, -1);
      t.shift.resize(d.elements.size() * t.order);
      for (std::size_t i = 0; i < d.elements.size(); ++i) {
        auto gi = d.group.index_of(d.elements[i]);
        t.group_index.push_back(gi);
        t.position[gi] = static_cast<std::int32_t>(i);
        t.neg.push_back(d.group.neg_index(gi));
        for (std::size_t x = 0; x < t.order; ++x)
          t.shift[i * t.order + x] =
              static_cast<std::uint32_t>(d.group.add_index(x, gi));
      }
    });
    return d.tables;
  }

  std::shared_ptr<const Data> data_;
};

/// Unordered sequence over a support, stored as its multiplicity vector.
class ZSequence {
public:
  ZSequence(Support support, std::vector<std::int64_t> multiplicities)
      : support_(std::move(support)), mult_(std::move(multiplicities)) {
    if (mult_.size() != support_.size())
      throw ArityMismatch("multiplicity vector has " +
                          std::to_string(mult_.size()) +
                          " entries for a support of size " +
                          std::to_string(support_.size()));
    for (auto m : mult_)
      if (m < 0)
        throw Error("multiplicities must be nonnegative");
  }
  explicit ZSequence(Support support)
      : ZSequence(support, std::vector<std::int64_t>(support.size(), 0)) {}

  const Support &support() const { return support_; }
  std::span<const std::int64_t> multiplicities() const { return mult_; }
  std::int64_t multiplicity(std::size_t i) const { return mult_[i]; }
  std::int64_t length() const {
    return std::accumulate(mult_.begin(), mult_.end(), std::int64_t{0});
  }
  bool empty() const { return length() == 0; }

  /// "(1,0)^2 (0,1)^1"; the empty sequence renders as "1".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < mult_.size(); ++i) {
      if (mult_[i] == 0)
        continue;
      if (!out.empty())
        out += ' ';
      out += support_[i].to_string() + "^" + std::to_string(mult_[i]);
    }
    return out.empty() ? "1" : out;
  }

  friend bool operator==(const ZSequence &a, const ZSequence &b) {
    return a.support_ == b.support_ && a.mult_ == b.mult_;
  }

private:
  Support support_;
  std::vector<std::int64_t> mult_;
};

/// sigma(S): the sum of all terms.
inline GroupElement sigma(const ZSequence &s) {
  const auto &g = s.support().group();
  auto acc = g.zero();
  for (std::size_t i = 0; i < s.support().size(); ++i)
    if (s.multiplicity(i))
      acc = acc + scale(s.multiplicity(i), s.support()[i]);
  return acc;
}

/// Sigma(S) as a bitset over group indices: one DP step per term, with each
/// element folded in at most ord(g) times.
inline ElementSet subsequence_sum_set(const ZSequence &s,
                                      std::int64_t cap = kDefaultSequenceCap) {
  if (s.length() > cap)
    throw SequenceTooLong("sequence of length " + std::to_string(s.length()) +
                          " exceeds the cap of " + std::to_string(cap));
  const auto &sup = s.support();
  auto order = static_cast<std::size_t>(sup.group().order());
  ElementSet cur(order), next(order);
  for (std::size_t i = 0; i < sup.size(); ++i) {
    auto reps = std::min(s.multiplicity(i), element_order(sup[i]));
    for (std::int64_t k = 0; k < reps; ++k) {
      ElementSet::extend(cur, next, sup.shift(i), sup.group_index(i));
      std::swap(cur, next);
    }
  }
  return cur;
}

inline std::vector<GroupElement>
subsequence_sums(const ZSequence &s, std::int64_t cap = kDefaultSequenceCap) {
  std::vector<GroupElement> out;
  const auto &g = s.support().group();
  subsequence_sum_set(s, cap).for_each(
      [&](std::size_t x) { out.push_back(g.element_at(x)); });
  return out;
}

inline bool is_zero_sum_free(const ZSequence &s,
                             std::int64_t cap = kDefaultSequenceCap) {
  return !subsequence_sum_set(s, cap).test(0);
}

inline bool is_zero_sum(const ZSequence &s) { return sigma(s).is_zero(); }

/// Minimal zero-sum test. Removing one copy of a single fixed term g must
/// leave a zero-sum free sequence: any proper zero-sum subsequence, or its
/// zero-sum complement, misses that copy.
inline bool is_atom(const ZSequence &s,
                    std::int64_t cap = kDefaultSequenceCap) {
  if (s.empty() || !is_zero_sum(s))
    return false;
  std::vector<std::int64_t> rest(s.multiplicities().begin(),
                                 s.multiplicities().end());
  for (auto &m : rest)
    if (m > 0) {
      --m;
      break;
    }
  return is_zero_sum_free(ZSequence(s.support(), std::move(rest)), cap);
}

} // namespace zerosum
