#pragma once

#include "atoms.hpp"
#include "error.hpp"
#include "group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zerosum {

/// D*(G) = 1 + sum (n_i - 1).
inline std::int64_t d_star(const Group &g) {
  std::int64_t out = 1;
  for (auto n : g.factors())
    out += n - 1;
  return out;
}
inline std::int64_t d_star(TrivialGroup) { return 1; }
inline std::int64_t d_star(const GroupOrTrivial &g) {
  return std::visit([](const auto &x) { return d_star(x); }, g);
}

namespace detail {

// p if n = p^k with k >= 1, else nullopt.
inline std::optional<std::int64_t> prime_power_base(std::int64_t n) {
  if (n < 2)
    return std::nullopt;
  auto p = Group::smallest_prime_factor(n);
  while (n % p == 0)
    n /= p;
  if (n != 1)
    return std::nullopt;
  return p;
}

inline std::int64_t p_part(std::int64_t n, std::int64_t p) {
  std::int64_t out = 1;
  while (n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

inline std::int64_t log_base(std::int64_t n, std::int64_t p) {
  std::int64_t e = 0;
  while (n > 1) {
    n /= p;
    ++e;
  }
  return e;
}

inline std::vector<std::int64_t> distinct_primes(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0)
        n /= d;
    }
  if (n > 1)
    out.push_back(n);
  return out;
}

/// s = floor((r + 1) / 2), as a 1-based index.
inline int middle_index(const Group &g) { return (g.rank() + 1) / 2; }

// n_{from} + ... + n_r, 1-based.
inline std::int64_t factor_sum(const Group &g, int from) {
  std::int64_t out = 0;
  for (int j = from; j <= g.rank(); ++j)
    out += g.factor(static_cast<std::size_t>(j - 1));
  return out;
}

} // namespace detail

/// A clause of the known list of groups with D(G) = D*(G), with the
/// parameters that matched. An empty optional means "not covered", never
/// "D(G) differs from D*(G)".
struct ClauseMatch {
  char clause = 0;
  std::string detail;
  std::string tag() const { return std::string("clause:") + clause; }
};

namespace detail {

inline bool all_equal_to(const Group &g, int count, std::int64_t value) {
  for (int i = 0; i < count; ++i)
    if (g.factor(static_cast<std::size_t>(i)) != value)
      return false;
  return true;
}

// G = K + C_{km}, K a p-group with D(K) <= m and m a power of p. The
// p'-part of G has to be cyclic, so it sits inside the largest factor;
// every way of splitting one cyclic summand off the p-part is tried.
inline std::optional<ClauseMatch> match_clause_c(const Group &g) {
  const int r = g.rank();
  for (auto p : distinct_primes(g.exponent())) {
    bool ok = true;
    for (int i = 0; i + 1 < r; ++i)
      if (prime_power_base(g.factor(static_cast<std::size_t>(i))) != p)
        ok = false;
    if (!ok)
      continue;
    std::vector<std::int64_t> p_factors(g.factors().begin(),
                                        g.factors().end() - 1);
    if (auto top = p_part(g.exponent(), p); top > 1)
      p_factors.push_back(top);
    auto k = g.exponent() / p_part(g.exponent(), p);
    for (std::size_t j = 0; j < p_factors.size(); ++j) {
      auto m = p_factors[j];
      std::int64_t dk = 1;
      for (std::size_t i = 0; i < p_factors.size(); ++i)
        if (i != j)
          dk += p_factors[i] - 1;
      if (dk <= m)
        return ClauseMatch{'c', "p=" + std::to_string(p) +
                                    ", D(K)=" + std::to_string(dk) +
                                    ", m=" + std::to_string(m) +
                                    ", k=" + std::to_string(k)};
    }
  }
  return std::nullopt;
}

inline std::optional<ClauseMatch> match_clause_f(const Group &g) {
  if (g.rank() != 3)
    return std::nullopt;
  std::optional<std::int64_t> prime;
  for (auto n : g.factors()) {
    if (n % 2 != 0)
      return std::nullopt;
    auto half = n / 2;
    if (half == 1)
      continue;
    auto base = prime_power_base(half);
    if (!base || (prime && *prime != *base))
      return std::nullopt;
    prime = base;
  }
  auto p = prime.value_or(2);
  std::string detail = "p=" + std::to_string(p);
  const char *names[] = {", a=", ", b=", ", c="};
  for (std::size_t i = 0; i < 3; ++i)
    detail += names[i] + std::to_string(log_base(g.factor(i) / 2, p));
  return ClauseMatch{'f', detail};
}

} // namespace detail

/// First clause (a)..(i) of the known D = D* list that covers G.
inline std::optional<ClauseMatch> d_equals_dstar_known(const Group &g) {
  const int r = g.rank();
  if (r <= 2)
    return ClauseMatch{'a', "rank " + std::to_string(r)};
  if (g.is_p_group())
    return ClauseMatch{
        'b', "p=" + std::to_string(Group::smallest_prime_factor(g.exponent()))};
  if (auto c = detail::match_clause_c(g))
    return c;
  if (r == 3 && g.factor(0) == 2)
    return ClauseMatch{'d', "m=" + std::to_string(g.factor(1) / 2) +
                                ", n=" + std::to_string(g.factor(2) / 2)};
  if (r == 3 && g.factor(0) == 3 && g.factor(1) % 6 == 0)
    return ClauseMatch{'e', "m=" + std::to_string(g.factor(1) / 6) +
                                ", n=" + std::to_string(g.factor(2) / 6)};
  if (auto f = detail::match_clause_f(g))
    return f;
  if (r == 4 && detail::all_equal_to(g, 3, 2))
    return ClauseMatch{'g', "n=" + std::to_string(g.factor(3) / 2)};
  if (r == 5 && detail::all_equal_to(g, 4, 2)) {
    auto n = g.factor(4) / 2;
    if (n >= 70 && n % 2 == 0)
      return ClauseMatch{'h', "n=" + std::to_string(n)};
  }
  if (r == 6 && detail::all_equal_to(g, 5, 2)) {
    auto n = g.factor(5) / 2;
    if (n >= 149 && n % 2 == 0)
      return ClauseMatch{'i', "n=" + std::to_string(n)};
  }
  return std::nullopt;
}

/// n_{s+1} + ... + n_r; the separating Noether number always exceeds it.
inline std::int64_t beta_sep_tail_sum(const Group &g) {
  return detail::factor_sum(g, detail::middle_index(g) + 1);
}

/// Lower bound: n_s + ... + n_r for odd r, n_s/p_1 + n_{s+1} + ... + n_r
/// for even r, with p_1 the least prime dividing n_1.
inline std::int64_t beta_sep_lower_bound(const Group &g) {
  const int s = detail::middle_index(g);
  auto ns = g.factor(static_cast<std::size_t>(s - 1));
  if (g.rank() % 2 == 1)
    return ns + beta_sep_tail_sum(g);
  auto p1 = Group::smallest_prime_factor(g.factor(0));
  return ns / p1 + beta_sep_tail_sum(g);
}

/// Upper bound via the embedding into C_{n_r}^r: s*n_r for odd r,
/// n_r/p + s*n_r for even r, with p the least prime dividing n_r.
inline std::int64_t beta_sep_upper_bound_generic(const Group &g) {
  const std::int64_t s = detail::middle_index(g);
  auto nr = g.exponent();
  if (g.rank() % 2 == 1)
    return s * nr;
  return nr / Group::smallest_prime_factor(nr) + s * nr;
}

enum class TheoremKind { Exact, UpperBoundOnly, HypothesisUnverified };

inline std::string to_string(TheoremKind k) {
  switch (k) {
  case TheoremKind::Exact:
    return "exact";
  case TheoremKind::UpperBoundOnly:
    return "upper_bound_only";
  case TheoremKind::HypothesisUnverified:
    return "hypothesis_unverified";
  }
  return "?";
}

struct TheoremOutcome {
  TheoremKind kind = TheoremKind::HypothesisUnverified;
  /// Exact value (odd rank) or upper bound (even rank); filled even when the
  /// hypothesis is unverified so reports can show the candidate.
  std::int64_t value = 0;
  int s = 0;
  /// Least prime divisor of n_s.
  std::int64_t p = 0;
  /// n_s * G, the group the hypothesis D = D* is about.
  GroupOrTrivial subgroup = TrivialGroup{};
  /// "trivial_subgroup", "clause:<x>", "brute_force", or "none".
  std::string hypothesis_checked_by = "none";
  std::string detail;
};

struct TheoremOptions {
  bool brute_force_hypothesis = false;
  std::uint64_t node_budget = kDefaultNodeBudget;
  std::size_t element_cap = kDefaultElementCap;
};

/// Evaluates the main theorem for rank >= 2: certify D(n_s G) = D*(n_s G),
/// then return the odd-rank exact value or the even-rank upper bound.
inline TheoremOutcome main_theorem_value(const Group &g,
                                         const TheoremOptions &opts = {}) {
  if (g.rank() < 2)
    throw Error("the main theorem needs rank at least 2");
  TheoremOutcome out;
  out.s = detail::middle_index(g);
  auto ns = g.factor(static_cast<std::size_t>(out.s - 1));
  out.p = Group::smallest_prime_factor(ns);
  out.subgroup = multiple_subgroup(g, ns);
  bool odd = g.rank() % 2 == 1;
  out.value = odd ? ns + beta_sep_tail_sum(g) : ns / out.p + beta_sep_tail_sum(g);

  bool certified = false;
  if (is_trivial(out.subgroup)) {
    certified = true;
    out.hypothesis_checked_by = "trivial_subgroup";
    out.detail = "n_s equals the exponent";
  } else {
    const auto &h = std::get<Group>(out.subgroup);
    if (auto clause = d_equals_dstar_known(h)) {
      certified = true;
      out.hypothesis_checked_by = clause->tag();
      out.detail = clause->detail;
    } else if (opts.brute_force_hypothesis) {
      out.hypothesis_checked_by = "brute_force";
      try {
        auto d = davenport(h, opts.node_budget, opts.element_cap);
        certified = d == d_star(h);
        out.detail = "D=" + std::to_string(d) +
                     ", D*=" + std::to_string(d_star(h));
      } catch (const BudgetExceeded &e) {
        out.detail = std::string("brute force incomplete: ") + e.what();
      }
    }
  }
  if (certified)
    out.kind = odd ? TheoremKind::Exact : TheoremKind::UpperBoundOnly;
  return out;
}

struct CorollaryValue {
  std::int64_t value = 0;
  /// "p_group_odd_rank", "p_group_even_rank", "rank_2", "rank_3", "rank_5".
  std::string source;
};

/// Exact separating Noether number where a closed form is known: p-groups,
/// and ranks 2, 3 and 5.
inline std::optional<CorollaryValue> corollary_values(const Group &g) {
  const int r = g.rank();
  if (r < 2)
    return std::nullopt;
  const int s = detail::middle_index(g);
  auto ns = g.factor(static_cast<std::size_t>(s - 1));
  auto tail = beta_sep_tail_sum(g);
  if (g.is_p_group()) {
    if (r % 2 == 1)
      return CorollaryValue{ns + tail, "p_group_odd_rank"};
    return CorollaryValue{ns / Group::smallest_prime_factor(ns) + tail,
                          "p_group_even_rank"};
  }
  if (r == 2)
    return CorollaryValue{
        g.factor(0) / Group::smallest_prime_factor(g.factor(0)) + g.factor(1),
        "rank_2"};
  if (r == 3)
    return CorollaryValue{g.factor(1) + g.factor(2), "rank_3"};
  if (r == 5)
    return CorollaryValue{g.factor(2) + g.factor(3) + g.factor(4), "rank_5"};
  return std::nullopt;
}

} // namespace zerosum
