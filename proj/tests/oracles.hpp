#pragma once

// Brute-force reference implementations used only by the tests. None of
// them share code paths with the engines they check: no bitsets, no index
// tables, no echelon forms.

#include <zerosum/group.hpp>
#include <zerosum/sequence.hpp>

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using zerosum::GroupElement;
using zerosum::ZSequence;
using Mult = std::vector<std::int64_t>;

/// Least m >= 1 with m*a = 0, by repeated addition.
inline std::int64_t order_by_addition(const GroupElement &a) {
  auto acc = a;
  std::int64_t m = 1;
  while (!acc.is_zero()) {
    acc = zerosum::add(acc, a);
    ++m;
  }
  return m;
}

/// Calls f on every sub-multiplicity vector 0 <= t <= m.
inline void for_each_submultiset(const Mult &m,
                                 const std::function<void(const Mult &)> &f) {
  Mult t(m.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m.size()) {
      f(t);
      return;
    }
    for (std::int64_t k = 0; k <= m[i]; ++k) {
      t[i] = k;
      rec(i + 1);
    }
    t[i] = 0;
  };
  rec(0);
}

inline GroupElement sum_of(const zerosum::Support &sup, const Mult &t) {
  auto acc = sup.group().zero();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::int64_t k = 0; k < t[i]; ++k)
      acc = zerosum::add(acc, sup[i]);
  return acc;
}

inline std::int64_t total(const Mult &t) {
  std::int64_t n = 0;
  for (auto x : t)
    n += x;
  return n;
}

/// Sigma(S) by listing every nonempty sub-multiset, as coordinate vectors.
inline std::set<std::vector<std::int64_t>> subsums(const ZSequence &s) {
  std::set<std::vector<std::int64_t>> out;
  Mult m(s.multiplicities().begin(), s.multiplicities().end());
  for_each_submultiset(m, [&](const Mult &t) {
    if (total(t) == 0)
      return;
    auto g = sum_of(s.support(), t);
    out.insert(std::vector<std::int64_t>(g.coords().begin(), g.coords().end()));
  });
  return out;
}

/// Atom by definition: nontrivial, zero-sum, and no proper nonempty
/// sub-multiset sums to zero.
inline bool is_atom_by_definition(const ZSequence &s) {
  Mult m(s.multiplicities().begin(), s.multiplicities().end());
  if (total(m) == 0 || !sum_of(s.support(), m).is_zero())
    return false;
  bool minimal = true;
  for_each_submultiset(m, [&](const Mult &t) {
    auto n = total(t);
    if (n == 0 || t == m || !minimal)
      return;
    if (sum_of(s.support(), t).is_zero())
      minimal = false;
  });
  return minimal;
}

/// Every multiplicity vector over k elements with total length in [1, max].
inline std::vector<Mult> bounded_vectors(std::size_t k, std::int64_t max) {
  std::vector<Mult> out;
  Mult t(k, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i,
                                                           std::int64_t left) {
    if (i == k) {
      if (total(t) > 0)
        out.push_back(t);
      return;
    }
    for (std::int64_t x = 0; x <= left; ++x) {
      t[i] = x;
      rec(i + 1, left - x);
    }
    t[i] = 0;
  };
  rec(0, max);
  return out;
}

/// True if v = sum c_j g_j for some c in [-bound, bound]^k. Written
/// independently of zerosum::naive_lattice_contains (plain odometer).
inline bool in_bounded_span(const std::vector<std::vector<std::int64_t>> &gens,
                            const std::vector<std::int64_t> &v,
                            std::int64_t bound) {
  std::vector<std::int64_t> c(gens.size(), -bound);
  for (;;) {
    std::vector<std::int64_t> acc(v.size(), 0);
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (std::size_t i = 0; i < v.size(); ++i)
        acc[i] += c[j] * gens[j][i];
    if (acc == v)
      return true;
    std::size_t j = 0;
    while (j < c.size() && c[j] == bound)
      c[j++] = -bound;
    if (j == c.size())
      return false;
    ++c[j];
  }
}

} // namespace oracle
