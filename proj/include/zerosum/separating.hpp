#pragma once

#include "atoms.hpp"
#include "error.hpp"
#include "formulas.hpp"
#include "group.hpp"
#include "lattice.hpp"
#include "search_control.hpp"
#include "sequence.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace zerosum {

/// Outcome of testing one atom A against the lattice spanned by the
/// strictly shorter atoms over its support.
struct SeparatingCheck {
  bool separating = false;
  /// Atoms of length <= |A| - 1 over the support, the lattice generators.
  std::vector<Multiplicities> shorter_atoms;
  /// When A is not separating: integer coefficients with
  /// A = sum_j coefficients[j] * shorter_atoms[j].
  std::vector<BigInt> coefficients;
};

inline SeparatingCheck check_separating(const ZSequence &atom,
                                        SearchControl &control) {
  if (!is_atom(atom))
    throw NotAnAtom(atom.to_string() + " is not a minimal zero-sum sequence");
  SeparatingCheck out;
  const auto len = atom.length();
  if (len > 1) {
    auto shorter = enumerate_atoms(atom.support(), len - 1, control);
    if (!shorter.complete)
      throw BudgetExceeded("atom enumeration for the separating test "
                           "exhausted its budget",
                           0);
    for (const auto &bucket : shorter.by_length)
      for (const auto &m : bucket)
        out.shorter_atoms.push_back(m);
  }
  auto basis = hermite_form(out.shorter_atoms, atom.support().size(), true);
  Multiplicities target(atom.multiplicities().begin(),
                        atom.multiplicities().end());
  auto combo = basis.solve(target);
  out.separating = !combo.has_value();
  if (combo)
    out.coefficients = std::move(*combo);
  return out;
}

inline bool is_separating_atom(const ZSequence &atom,
                               std::uint64_t node_budget = kDefaultNodeBudget) {
  SearchControl control(node_budget);
  return check_separating(atom, control).separating;
}

namespace detail {

struct SupportVerdict {
  std::int64_t length = 0;
  Multiplicities atom;
  std::size_t basis_size = 0;
  bool complete = true;
  std::uint64_t tested = 0;
  std::uint64_t separating_seen = 0;
  std::int64_t longest_separating_seen = 0;
};

struct VerdictOptions {
  std::int64_t max_len = 0;
  /// Only atoms using every support element are candidates.
  bool full_support_only = false;
  /// Separating atoms longer than this violate the D* length bound.
  std::int64_t length_bound = std::numeric_limits<std::int64_t>::max();
  /// Test candidates longer than length_bound even below the floor.
  bool audit = false;
};

// Longest separating atom over `support`, first in lexicographic order
// among equals. Lattices of atoms of length <= l are built once, in
// increasing l; candidates go in decreasing length. `floor()` reports a
// length below which candidates no longer matter to the caller.
template <class Floor>
SupportVerdict best_separating(const Support &support,
                               const VerdictOptions &opts,
                               SearchControl &control, Floor &&floor) {
  SupportVerdict out;
  auto atoms = enumerate_atoms(support, opts.max_len, control);
  if (!atoms.complete) {
    out.complete = false;
    return out;
  }
  std::vector<std::pair<std::int64_t, const Multiplicities *>> candidates;
  for (auto l = atoms.longest(); l >= 1; --l)
    for (const auto &m : atoms.by_length[static_cast<std::size_t>(l)])
      if (!opts.full_support_only ||
          std::all_of(m.begin(), m.end(), [](auto x) { return x > 0; }))
        candidates.emplace_back(l, &m);
  if (candidates.empty() || candidates.front().first < floor())
    return out;

  // levels[l] spans the atoms of length <= l
  const auto top = candidates.front().first;
  std::vector<LatticeBasis> levels;
  std::vector<std::size_t> level_sizes;
  levels.emplace_back(support.size());
  level_sizes.push_back(0);
  for (std::int64_t l = 1; l < top; ++l) {
    const auto &bucket = atoms.by_length[static_cast<std::size_t>(l)];
    levels.push_back(levels.back().extended(bucket));
    level_sizes.push_back(level_sizes.back() + bucket.size());
  }

  for (const auto &[len, mult] : candidates) {
    if (len < floor() && !(opts.audit && len > opts.length_bound))
      break;
    ++out.tested;
    if (levels[static_cast<std::size_t>(len - 1)].contains(*mult))
      continue;
    ++out.separating_seen;
    out.longest_separating_seen = std::max(out.longest_separating_seen, len);
    if (len > opts.length_bound)
      throw InvariantViolation(
          "separating atom " + ZSequence(support, *mult).to_string() +
          " of length " + std::to_string(len) + " exceeds D* = " +
          std::to_string(opts.length_bound));
    out.length = len;
    out.atom = *mult;
    out.basis_size = level_sizes[static_cast<std::size_t>(len - 1)];
    break;
  }
  return out;
}

} // namespace detail

/// Longest separating atom over `support` among atoms of length at most
/// `prune_above` (0 if there is none).
inline std::int64_t
max_separating_atom_length(const Support &support, std::int64_t prune_above,
                           SearchControl &control) {
  if (prune_above < 1)
    throw Error("prune_above must be at least 1");
  detail::VerdictOptions opts;
  opts.max_len = prune_above;
  auto v = detail::best_separating(support, opts, control,
                                   [] { return std::int64_t{0}; });
  if (!v.complete)
    throw BudgetExceeded("separating search exhausted its budget", v.length);
  return v.length;
}

inline std::int64_t
max_separating_atom_length(const Support &support, std::int64_t prune_above,
                           std::uint64_t node_budget = kDefaultNodeBudget) {
  SearchControl control(node_budget);
  return max_separating_atom_length(support, prune_above, control);
}

struct SeparatingWitness {
  /// The atom's own support, in lexicographic element order.
  Support support;
  ZSequence atom;
  std::int64_t length = 0;
  /// Number of strictly shorter atoms spanning the lattice it escapes.
  std::size_t basis_size = 0;
};

/// A longer atom on the witness support that is not separating, with the
/// combination of shorter atoms that expresses it.
struct NonSeparatingExample {
  ZSequence atom;
  std::vector<Multiplicities> shorter_atoms;
  std::vector<BigInt> coefficients;
};

struct BetaSepConfig {
  unsigned threads = 1;
  std::uint64_t node_budget = kDefaultNodeBudget;
  std::optional<std::chrono::milliseconds> timeout;
  /// Largest support size searched; defaults to rank + 1. Larger values
  /// exist for checking that the default loses nothing.
  std::optional<std::size_t> max_support_size;
  /// Longest atom enumerated; defaults to D*(G). A larger value turns on
  /// auditing of the D* length bound for separating atoms.
  std::optional<std::int64_t> atom_length_limit;
  std::size_t element_cap = kDefaultElementCap;
  bool non_separating_example = true;
};

struct BetaSepResult {
  Group group;
  std::int64_t value = 0;
  std::optional<SeparatingWitness> witness{};
  std::optional<NonSeparatingExample> non_separating{};
  bool complete = true;
  std::uint64_t supports_examined = 0;
  std::uint64_t atoms_tested = 0;
  std::uint64_t separating_atoms_seen = 0;
  std::int64_t longest_separating_seen = 0;
  std::int64_t length_bound = 0;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

namespace detail {

// Subsets of {0..n-1} of size 1..k in lexicographic order of their sorted
// index lists: (0) (0,1) (0,1,2) ... (0,2) ...
class SubsetStream {
public:
  SubsetStream(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (n_ > 0 && k_ > 0)
      cur_.push_back(0);
    else
      done_ = true;
  }

  bool next(std::uint64_t &seq, std::vector<std::size_t> &out) {
    std::lock_guard lock(mu_);
    if (done_)
      return false;
    seq = seq_++;
    out = cur_;
    advance();
    return true;
  }

private:
  void advance() {
    if (cur_.size() < k_ && cur_.back() + 1 < n_) {
      cur_.push_back(cur_.back() + 1);
      return;
    }
    while (!cur_.empty()) {
      auto v = cur_.back() + 1;
      cur_.pop_back();
      if (v < n_) {
        cur_.push_back(v);
        return;
      }
    }
    done_ = true;
  }

  std::mutex mu_;
  std::size_t n_, k_;
  std::vector<std::size_t> cur_;
  std::uint64_t seq_ = 0;
  bool done_ = false;
};

struct Candidate {
  std::int64_t length = 0;
  std::uint64_t seq = 0;
  std::vector<std::size_t> indices;
  Multiplicities atom;
  std::size_t basis_size = 0;

  // Longer wins; ties go to the lexicographically smaller support.
  bool better_than(const Candidate &o) const {
    if (length != o.length)
      return length > o.length;
    if (seq != o.seq)
      return seq < o.seq;
    return atom < o.atom;
  }
};

} // namespace detail

/// The separating Noether number by exhaustive search: the longest
/// separating atom over supports of at most rank + 1 nonzero elements.
///
/// A separating atom over G0 is also separating over its own support, so
/// each support only contributes atoms that use all of its elements. The
/// search is data-parallel over supports; the reduction picks the longest
/// atom, then the lexicographically first support, so the witness does
/// not depend on the worker count. It stops early once an atom of length
/// D*(G) is found, since none can be longer.
inline BetaSepResult beta_sep(const Group &g, const BetaSepConfig &cfg = {}) {
  auto started = std::chrono::steady_clock::now();
  detail::require_enumerable(g, cfg.element_cap);
  if (cfg.threads < 1)
    throw Error("worker count must be at least 1");

  BetaSepResult out{.group = g};
  const auto dstar = d_star(g);
  const auto limit = cfg.atom_length_limit.value_or(dstar);
  const bool audit = limit > dstar;
  out.length_bound = dstar;

  const std::size_t n = static_cast<std::size_t>(g.order()) - 1;
  const auto k = std::min<std::size_t>(
      cfg.max_support_size.value_or(static_cast<std::size_t>(g.rank()) + 1),
      n);

  SearchControl control(cfg.node_budget, cfg.timeout);
  detail::SubsetStream stream(n, k);
  constexpr auto kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> stop_seq{kNone};
  std::atomic<std::int64_t> global_best{0};
  std::atomic<std::uint64_t> processed{0};
  std::mutex merge_mu;
  std::optional<detail::Candidate> best;
  std::uint64_t tested = 0, seen = 0;
  std::int64_t longest_seen = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    std::optional<detail::Candidate> local;
    std::uint64_t local_tested = 0, local_seen = 0;
    std::int64_t local_longest = 0;
    try {
      std::uint64_t seq;
      std::vector<std::size_t> idx;
      while (!control.stopped() && stream.next(seq, idx)) {
        if (seq > stop_seq.load())
          break;
        for (auto &i : idx)
          ++i; // position -> group index (0 is the identity)
        auto support = Support::from_indices(g, idx);
        detail::VerdictOptions opts{limit, true, dstar, audit};
        auto v = detail::best_separating(support, opts, control, [&] {
          return global_best.load(std::memory_order_relaxed);
        });
        if (!v.complete)
          break;
        processed.fetch_add(1);
        local_tested += v.tested;
        local_seen += v.separating_seen;
        local_longest = std::max(local_longest, v.longest_separating_seen);
        if (v.length == 0)
          continue;
        detail::Candidate c{v.length, seq, idx, v.atom, v.basis_size};
        if (!local || c.better_than(*local))
          local = std::move(c);
        auto prev = global_best.load();
        while (prev < v.length && !global_best.compare_exchange_weak(prev, v.length))
          ;
        if (v.length == dstar && !audit) {
          auto cur = stop_seq.load();
          while (seq < cur && !stop_seq.compare_exchange_weak(cur, seq))
            ;
        }
      }
    } catch (...) {
      std::lock_guard lock(merge_mu);
      if (!failure)
        failure = std::current_exception();
      control.charge(control.budget() + 1);
    }
    std::lock_guard lock(merge_mu);
    tested += local_tested;
    seen += local_seen;
    longest_seen = std::max(longest_seen, local_longest);
    if (local && (!best || local->better_than(*best)))
      best = std::move(local);
  };

  if (cfg.threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < cfg.threads; ++t)
      pool.emplace_back(worker);
  }
  if (failure)
    std::rethrow_exception(failure);

  out.complete = !control.stopped();
  out.atoms_tested = tested;
  out.separating_atoms_seen = seen;
  out.longest_separating_seen = longest_seen;
  out.nodes = control.nodes();
  if (out.complete) {
    auto stop = stop_seq.load();
    std::uint64_t total = 0;
    if (stop == kNone) {
      total = processed.load();
    } else {
      total = stop + 1;
    }
    out.supports_examined = total;
  } else {
    out.supports_examined = processed.load();
  }

  if (best) {
    auto support = Support::from_indices(g, best->indices);
    ZSequence atom(support, best->atom);
    if (!is_atom(atom))
      throw InvariantViolation("separating witness " + atom.to_string() +
                               " is not an atom");
    out.value = best->length;
    out.witness = SeparatingWitness{support, atom, best->length,
                                    best->basis_size};
    if (cfg.non_separating_example && out.complete) {
      SearchControl extra(cfg.node_budget);
      auto atoms = enumerate_atoms(support, limit, extra);
      for (auto l = atoms.longest(); l > best->length && !out.non_separating;
           --l)
        for (const auto &m : atoms.by_length[static_cast<std::size_t>(l)]) {
          ZSequence longer(support, m);
          auto check = check_separating(longer, extra);
          if (!check.separating) {
            out.non_separating = NonSeparatingExample{
                longer, std::move(check.shorter_atoms),
                std::move(check.coefficients)};
            break;
          }
        }
    }
  }
  out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  return out;
}

struct Projection {
  ZSequence sequence;
  /// Terms whose image m*g is the identity; they are dropped.
  std::int64_t dropped_terms = 0;
};

/// phi(prod g^{m y_g}) = prod (m g)^{y_g}. Images are merged in order of
/// first appearance; identity images are dropped and counted.
inline Projection phi_project(const ZSequence &s, std::int64_t m) {
  if (m < 1)
    throw Error("projection factor must be positive");
  const auto &sup = s.support();
  for (std::size_t i = 0; i < sup.size(); ++i)
    if (s.multiplicity(i) % m != 0)
      throw MultiplicityNotDivisible(
          "multiplicity " + std::to_string(s.multiplicity(i)) + " of " +
          sup[i].to_string() + " is not divisible by " + std::to_string(m));
  std::vector<GroupElement> images;
  Multiplicities mult;
  std::int64_t dropped = 0;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    auto img = scale(m, sup[i]);
    auto y = s.multiplicity(i) / m;
    if (img.is_zero()) {
      dropped += y;
      continue;
    }
    auto it = std::find(images.begin(), images.end(), img);
    if (it == images.end()) {
      images.push_back(img);
      mult.push_back(y);
    } else {
      mult[static_cast<std::size_t>(it - images.begin())] += y;
    }
  }
  return Projection{ZSequence(Support(sup.group(), std::move(images)),
                              std::move(mult)),
                    dropped};
}

} // namespace zerosum
