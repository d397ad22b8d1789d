#pragma once

#include "error.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace zerosum {

inline constexpr std::size_t kDefaultElementCap = 4096;

class GroupElement;

/// Finite abelian group C_{n_1} + ... + C_{n_r} in invariant-factor form,
/// 1 < n_1 | n_2 | ... | n_r. Cheap to copy; the factor list is shared.
class Group {
public:
  static Group make(std::span<const std::int64_t> factors) {
    if (factors.empty())
      throw FactorTooSmall("a group needs at least one invariant factor");
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i] < 2)
        throw FactorTooSmall("invariant factor " + std::to_string(factors[i]) +
                             " is smaller than 2");
      if (i + 1 < factors.size() && factors[i + 1] % factors[i] != 0)
        throw DivisibilityChainViolation(
            std::to_string(factors[i]) + " does not divide " +
            std::to_string(factors[i + 1]));
    }
    return Group(std::vector<std::int64_t>(factors.begin(), factors.end()));
  }
  static Group make(std::initializer_list<std::int64_t> factors) {
    return make(std::span<const std::int64_t>(factors.begin(), factors.size()));
  }

  /// Parses the comma-separated text form, e.g. "2,2,4".
  static Group parse(std::string_view text) {
    std::vector<std::int64_t> factors;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto comma = text.find(',', pos);
      if (comma == std::string_view::npos)
        comma = text.size();
      auto token = text.substr(pos, comma - pos);
      while (!token.empty() && token.front() == ' ')
        token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ')
        token.remove_suffix(1);
      std::int64_t value = 0;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (token.empty() || ec != std::errc() ||
          ptr != token.data() + token.size())
        throw ParseError("malformed group factor list: '" + std::string(text) +
                         "'");
      factors.push_back(value);
      pos = comma + 1;
    }
    return make(factors);
  }

  std::span<const std::int64_t> factors() const { return layout_->factors; }
  std::int64_t factor(std::size_t i) const { return layout_->factors[i]; }
  int rank() const { return static_cast<int>(layout_->factors.size()); }
  std::int64_t exponent() const { return layout_->factors.back(); }

  /// |G|, saturating at INT64_MAX for groups far beyond enumeration scale.
  std::int64_t order() const { return layout_->order; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < layout_->factors.size(); ++i) {
      if (i)
        out += ',';
      out += std::to_string(layout_->factors[i]);
    }
    return out;
  }

  bool is_p_group() const {
    auto p = smallest_prime_factor(exponent());
    auto n = exponent();
    while (n % p == 0)
      n /= p;
    return n == 1;
  }

  GroupElement zero() const;
  GroupElement element(std::vector<std::int64_t> coords) const;

  /// Lexicographic index of an element; the last coordinate varies fastest.
  std::size_t index_of(const GroupElement &g) const;
  GroupElement element_at(std::size_t index) const;

  /// Index arithmetic used by the search engines. Requires order() to fit.
  std::size_t add_index(std::size_t a, std::size_t b) const {
    std::size_t out = 0;
    const auto &f = layout_->factors;
    const auto &stride = layout_->strides;
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto ca = (a / stride[i]) % static_cast<std::size_t>(f[i]);
      auto cb = (b / stride[i]) % static_cast<std::size_t>(f[i]);
      out += ((ca + cb) % static_cast<std::size_t>(f[i])) * stride[i];
    }
    return out;
  }
  std::size_t neg_index(std::size_t a) const {
    std::size_t out = 0;
    const auto &f = layout_->factors;
    const auto &stride = layout_->strides;
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto n = static_cast<std::size_t>(f[i]);
      auto c = (a / stride[i]) % n;
      out += ((n - c) % n) * stride[i];
    }
    return out;
  }

  friend bool operator==(const Group &a, const Group &b) {
    return a.layout_ == b.layout_ || a.layout_->factors == b.layout_->factors;
  }

  static std::int64_t smallest_prime_factor(std::int64_t n) {
    for (std::int64_t d = 2; d * d <= n; ++d)
      if (n % d == 0)
        return d;
    return n;
  }

private:
  struct Layout {
    std::vector<std::int64_t> factors;
    std::vector<std::size_t> strides;
    std::int64_t order = 1;
  };

  explicit Group(std::vector<std::int64_t> factors)
      : layout_(build_layout(std::move(factors))) {}

  static std::shared_ptr<const Layout>
  build_layout(std::vector<std::int64_t> factors) {
    auto layout = std::make_shared<Layout>();
    auto &l = *layout;
    l.factors = std::move(factors);
    l.strides.assign(l.factors.size(), 1);
    constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
    for (auto n : l.factors)
      l.order = (l.order > kMax / n) ? kMax : l.order * n;
    for (std::size_t i = l.factors.size(); i-- > 1;) {
      auto next = l.strides[i] * static_cast<std::size_t>(l.factors[i]);
      l.strides[i - 1] = l.order == kMax ? 0 : next;
    }
    return layout;
  }

  std::shared_ptr<const Layout> layout_;
};

/// The trivial group {0}. Kept apart from Group so formulas handle it
/// explicitly instead of seeing an empty factor list.
struct TrivialGroup {
  friend bool operator==(TrivialGroup, TrivialGroup) { return true; }
};

using GroupOrTrivial = std::variant<TrivialGroup, Group>;

inline bool is_trivial(const GroupOrTrivial &g) {
  return std::holds_alternative<TrivialGroup>(g);
}

inline std::string to_string(const GroupOrTrivial &g) {
  if (is_trivial(g))
    return "trivial";
  return std::get<Group>(g).to_string();
}

/// Residue vector, one coordinate per invariant factor.
class GroupElement {
public:
  GroupElement(Group group, std::vector<std::int64_t> coords)
      : group_(std::move(group)), coords_(std::move(coords)) {
    if (coords_.size() != static_cast<std::size_t>(group_.rank()))
      throw GroupMismatch("element arity " + std::to_string(coords_.size()) +
                          " does not match group rank " +
                          std::to_string(group_.rank()));
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      auto n = group_.factor(i);
      coords_[i] = ((coords_[i] % n) + n) % n;
    }
  }

  const Group &group() const { return group_; }
  std::span<const std::int64_t> coords() const { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](auto c) { return c == 0; });
  }

  /// Text form "(1,0)".
  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i)
        out += ',';
      out += std::to_string(coords_[i]);
    }
    return out + ")";
  }

  friend bool operator==(const GroupElement &a, const GroupElement &b) {
    return a.group_ == b.group_ && a.coords_ == b.coords_;
  }

private:
  Group group_;
  std::vector<std::int64_t> coords_;
};

inline GroupElement Group::zero() const {
  return GroupElement(*this, std::vector<std::int64_t>(factors().size(), 0));
}

inline GroupElement Group::element(std::vector<std::int64_t> coords) const {
  return GroupElement(*this, std::move(coords));
}

inline std::size_t Group::index_of(const GroupElement &g) const {
  if (!(g.group() == *this))
    throw GroupMismatch("element belongs to a different group");
  std::size_t out = 0;
  for (std::size_t i = 0; i < layout_->factors.size(); ++i)
    out += static_cast<std::size_t>(g[i]) * layout_->strides[i];
  return out;
}

inline GroupElement Group::element_at(std::size_t index) const {
  std::vector<std::int64_t> coords(layout_->factors.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    coords[i] = static_cast<std::int64_t>(
        (index / layout_->strides[i]) %
        static_cast<std::size_t>(layout_->factors[i]));
  return GroupElement(*this, std::move(coords));
}

namespace detail {
inline void require_same_group(const GroupElement &a, const GroupElement &b) {
  if (!(a.group() == b.group()))
    throw GroupMismatch("elements of " + a.group().to_string() + " and " +
                        b.group().to_string() + " cannot be combined");
}
} // namespace detail

inline GroupElement add(const GroupElement &a, const GroupElement &b) {
  detail::require_same_group(a, b);
  std::vector<std::int64_t> c(a.coords().begin(), a.coords().end());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] += b[i];
  return GroupElement(a.group(), std::move(c));
}

inline GroupElement neg(const GroupElement &a) {
  std::vector<std::int64_t> c(a.coords().begin(), a.coords().end());
  for (auto &x : c)
    x = -x;
  return GroupElement(a.group(), std::move(c));
}

inline GroupElement scale(std::int64_t m, const GroupElement &a) {
  std::vector<std::int64_t> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto n = a.group().factor(i);
    // reduce first so the product cannot overflow
    c[i] = static_cast<std::int64_t>(
        (static_cast<__int128>(((m % n) + n) % n) * a[i]) % n);
  }
  return GroupElement(a.group(), std::move(c));
}

inline GroupElement operator+(const GroupElement &a, const GroupElement &b) {
  return add(a, b);
}
inline GroupElement operator-(const GroupElement &a) { return neg(a); }

/// ord(g): lcm over coordinates of n_i / gcd(n_i, g_i).
inline std::int64_t element_order(const GroupElement &a) {
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < a.coords().size(); ++i) {
    auto n = a.group().factor(i);
    ord = std::lcm(ord, n / std::gcd(n, a[i]));
  }
  return ord;
}

/// All |G| elements in lexicographic order, identity first.
inline std::vector<GroupElement>
enumerate_elements(const Group &g, std::size_t cap = kDefaultElementCap) {
  if (g.order() > static_cast<std::int64_t>(cap))
    throw GroupTooLarge("group " + g.to_string() + " has order " +
                        std::to_string(g.order()) + ", above the cap of " +
                        std::to_string(cap));
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(g.order()));
  for (std::size_t i = 0; i < static_cast<std::size_t>(g.order()); ++i)
    out.push_back(g.element_at(i));
  return out;
}

/// Invariant factors of mG = { m*g }: n_j / gcd(n_j, m) with the 1s dropped.
inline GroupOrTrivial multiple_subgroup(const Group &g, std::int64_t m) {
  std::vector<std::int64_t> factors;
  for (auto n : g.factors()) {
    auto f = n / std::gcd(n, m);
    if (f > 1)
      factors.push_back(f);
  }
  if (factors.empty())
    return TrivialGroup{};
  // n_j | n_{j+1} implies n_j/gcd(n_j,m) | n_{j+1}/gcd(n_{j+1},m)
  return Group::make(factors);
}

} // namespace zerosum
