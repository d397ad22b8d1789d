#pragma once

#include "error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <string>
#include <variant>
#include <vector>

namespace zerosum {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<std::int64_t>;

namespace detail {

struct Overflow {};

// Word-sized arithmetic that refuses to wrap; BigInt overloads never throw.
inline std::int64_t add_(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Overflow{};
  return r;
}
inline std::int64_t sub_(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Overflow{};
  return r;
}
inline std::int64_t mul_(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Overflow{};
  return r;
}
inline std::int64_t neg_(std::int64_t a) { return sub_(0, a); }
inline BigInt add_(const BigInt &a, const BigInt &b) { return a + b; }
inline BigInt sub_(const BigInt &a, const BigInt &b) { return a - b; }
inline BigInt mul_(const BigInt &a, const BigInt &b) { return a * b; }
inline BigInt neg_(const BigInt &a) { return -a; }

template <class Int> Int floor_div(const Int &a, const Int &b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0)))
    q = sub_(q, Int(1));
  return q;
}

/// Returns (g, x, y) with x*a + y*b = g = gcd(a, b) > 0; requires a > 0.
template <class Int> std::tuple<Int, Int, Int> xgcd(const Int &a, const Int &b) {
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = floor_div(r0, r1);
    Int r2 = sub_(r0, mul_(q, r1));
    Int s2 = sub_(s0, mul_(q, s1));
    Int t2 = sub_(t0, mul_(q, t1));
    r0 = std::move(r1), r1 = std::move(r2);
    s0 = std::move(s1), s1 = std::move(s2);
    t0 = std::move(t1), t1 = std::move(t2);
  }
  if (r0 < 0)
    return {neg_(r0), neg_(s0), neg_(t0)};
  return {r0, s0, t0};
}

template <class Int> using Row = std::vector<Int>;

// row <- row - q * other
template <class Int> void sub_multiple(Row<Int> &row, const Row<Int> &other,
                                       const Int &q) {
  for (std::size_t k = 0; k < row.size(); ++k)
    if (other[k] != 0)
      row[k] = sub_(row[k], mul_(q, other[k]));
}

// Row-style Hermite echelon: rows sorted by pivot column, pivots positive,
// entries above each pivot reduced into [0, pivot). When witnesses are
// tracked, rows[i] = sum_j transform[i][j] * generator_j.
template <class Int> struct Echelon {
  std::size_t dim = 0;
  bool track = false;
  std::size_t generators = 0;
  std::vector<std::size_t> pivots;
  std::vector<Row<Int>> rows;
  std::vector<Row<Int>> transform;

  void insert(Row<Int> v) {
    Row<Int> t;
    if (track) {
      for (auto &tr : transform)
        tr.resize(generators + 1, Int(0));
      t.assign(generators + 1, Int(0));
      t[generators] = 1;
    }
    ++generators;

    std::size_t i = 0;
    for (;;) {
      std::size_t c = 0;
      while (c < dim && v[c] == 0)
        ++c;
      if (c == dim)
        break;
      while (i < rows.size() && pivots[i] < c)
        ++i;
      if (i < rows.size() && pivots[i] == c) {
        combine(i, c, v, t);
        ++i;
        continue;
      }
      if (v[c] < 0) {
        for (auto &x : v)
          x = neg_(x);
        for (auto &x : t)
          x = neg_(x);
      }
      pivots.insert(pivots.begin() + static_cast<std::ptrdiff_t>(i), c);
      rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(i), std::move(v));
      if (track)
        transform.insert(transform.begin() + static_cast<std::ptrdiff_t>(i),
                         std::move(t));
      break;
    }
    reduce_above();
  }

  // Clears v[c] against row i with a unimodular 2x2 step.
  void combine(std::size_t i, std::size_t c, Row<Int> &v, Row<Int> &t) {
    auto &row = rows[i];
    Int p = row[c];
    Int x = v[c];
    if (x % p == 0) {
      Int q = x / p;
      sub_multiple(v, row, q);
      if (track)
        sub_multiple(t, transform[i], q);
      return;
    }
    auto [g, a, b] = xgcd(p, x);
    Int pg = p / g, xg = x / g;
    auto mix = [&](Row<Int> &r, Row<Int> &w) {
      for (std::size_t k = 0; k < r.size(); ++k) {
        Int nr = add_(mul_(a, r[k]), mul_(b, w[k]));
        Int nw = sub_(mul_(pg, w[k]), mul_(xg, r[k]));
        r[k] = std::move(nr);
        w[k] = std::move(nw);
      }
    };
    mix(row, v);
    if (track)
      mix(transform[i], t);
  }

  void reduce_above() {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Int &p = rows[i][pivots[i]];
      for (std::size_t j = 0; j < i; ++j) {
        Int q = floor_div(rows[j][pivots[i]], p);
        if (q == 0)
          continue;
        sub_multiple(rows[j], rows[i], q);
        if (track)
          sub_multiple(transform[j], transform[i], q);
      }
    }
  }

  // Coefficients over the generators if v is in the lattice. Without
  // tracking the returned vector is empty but engaged.
  std::optional<Row<Int>> solve(Row<Int> v) const {
    Row<Int> coeff;
    if (track)
      coeff.assign(generators, Int(0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Int &p = rows[i][pivots[i]];
      if (v[pivots[i]] % p != 0)
        return std::nullopt;
      Int q = v[pivots[i]] / p;
      if (q == 0)
        continue;
      sub_multiple(v, rows[i], q);
      if (track) {
        const auto &tr = transform[i];
        for (std::size_t k = 0; k < tr.size(); ++k)
          if (tr[k] != 0)
            coeff[k] = add_(coeff[k], mul_(q, tr[k]));
      }
    }
    for (const auto &x : v)
      if (x != 0)
        return std::nullopt;
    return coeff;
  }
};

inline Row<BigInt> widen(const Row<std::int64_t> &r) {
  return Row<BigInt>(r.begin(), r.end());
}

inline Echelon<BigInt> widen(const Echelon<std::int64_t> &e) {
  Echelon<BigInt> w;
  w.dim = e.dim;
  w.track = e.track;
  w.generators = e.generators;
  w.pivots = e.pivots;
  for (const auto &r : e.rows)
    w.rows.push_back(widen(r));
  for (const auto &r : e.transform)
    w.transform.push_back(widen(r));
  return w;
}

} // namespace detail

/// Integer span of a list of generators, held in canonical Hermite form.
///
/// Arithmetic runs in checked 64-bit words and promotes the whole basis to
/// unbounded integers on the first overflow. Values are immutable;
/// `extended` returns a new basis.
class LatticeBasis {
public:
  explicit LatticeBasis(std::size_t dim, bool track_witness = false)
      : track_(track_witness) {
    detail::Echelon<std::int64_t> e;
    e.dim = dim;
    e.track = track_witness;
    data_ = std::move(e);
  }

  std::size_t dim() const {
    return std::visit([](const auto &e) { return e.dim; }, data_);
  }
  std::size_t rank() const {
    return std::visit([](const auto &e) { return e.rows.size(); }, data_);
  }
  std::size_t generator_count() const {
    return std::visit([](const auto &e) { return e.generators; }, data_);
  }
  bool tracks_witnesses() const { return track_; }
  bool promoted() const {
    return std::holds_alternative<detail::Echelon<BigInt>>(data_);
  }

  /// Generators in insertion order (kept only when tracking witnesses).
  const std::vector<IntVector> &generators() const { return generators_; }

  std::vector<std::size_t> pivot_columns() const {
    return std::visit([](const auto &e) { return e.pivots; }, data_);
  }

  std::vector<std::vector<BigInt>> echelon_rows() const {
    std::vector<std::vector<BigInt>> out;
    std::visit(
        [&](const auto &e) {
          for (const auto &r : e.rows)
            out.emplace_back(r.begin(), r.end());
        },
        data_);
    return out;
  }

  LatticeBasis extended(std::span<const IntVector> more) const {
    LatticeBasis out = *this;
    for (const auto &v : more)
      out.append(v);
    return out;
  }

  bool contains(const IntVector &v) const { return solve_impl(v).has_value(); }

  /// Integer coefficients c with v = sum_j c_j * generators()[j], or
  /// nullopt when v is not in the lattice. Requires witness tracking.
  std::optional<std::vector<BigInt>> solve(const IntVector &v) const {
    if (!track_)
      throw Error("this lattice basis was built without witness tracking");
    return solve_impl(v);
  }

private:
  void check_arity(const IntVector &v) const {
    if (v.size() != dim())
      throw ArityMismatch("vector of arity " + std::to_string(v.size()) +
                          " against a lattice of dimension " +
                          std::to_string(dim()));
  }

  void append(const IntVector &v) {
    check_arity(v);
    if (track_)
      generators_.push_back(v);
    if (auto *narrow = std::get_if<detail::Echelon<std::int64_t>>(&data_)) {
      auto trial = *narrow;
      try {
        trial.insert(v);
        *narrow = std::move(trial);
        return;
      } catch (const detail::Overflow &) {
        data_ = detail::widen(*narrow);
      }
    }
    std::get<detail::Echelon<BigInt>>(data_).insert(detail::widen(v));
  }

  std::optional<std::vector<BigInt>> solve_impl(const IntVector &v) const {
    check_arity(v);
    if (const auto *narrow =
            std::get_if<detail::Echelon<std::int64_t>>(&data_)) {
      try {
        auto r = narrow->solve(v);
        if (!r)
          return std::nullopt;
        return std::vector<BigInt>(r->begin(), r->end());
      } catch (const detail::Overflow &) {
        return detail::widen(*narrow).solve(detail::widen(v));
      }
    }
    return std::get<detail::Echelon<BigInt>>(data_).solve(detail::widen(v));
  }

  bool track_;
  std::vector<IntVector> generators_;
  std::variant<detail::Echelon<std::int64_t>, detail::Echelon<BigInt>> data_;
};

/// Hermite form of the integer span of `generators` in Z^dim.
inline LatticeBasis hermite_form(std::span<const IntVector> generators,
                                 std::size_t dim, bool track_witness = true) {
  return LatticeBasis(dim, track_witness).extended(generators);
}

inline bool lattice_contains(const LatticeBasis &basis, const IntVector &v) {
  return basis.contains(v);
}

/// Exhaustive search over coefficients in [-bound, bound]^k. Sound, and
/// complete only within the bound; a cross-check oracle for small inputs.
inline bool naive_lattice_contains(std::span<const IntVector> generators,
                                   const IntVector &v, std::int64_t bound) {
  if (generators.size() > 6 || v.size() > 5 || bound > 8 || bound < 0)
    throw InstanceTooLarge("naive lattice search is limited to 6 generators, "
                           "dimension 5 and coefficient bound 8");
  for (const auto &g : generators)
    if (g.size() != v.size())
      throw ArityMismatch("generator arity differs from the target");
  IntVector acc(v.size(), 0);
  auto rec = [&](auto &self, std::size_t i) -> bool {
    if (i == generators.size())
      return acc == v;
    const auto &g = generators[i];
    for (std::size_t k = 0; k < acc.size(); ++k)
      acc[k] -= bound * g[k];
    for (std::int64_t c = -bound; c <= bound; ++c) {
      if (self(self, i + 1))
        return true;
      for (std::size_t k = 0; k < acc.size(); ++k)
        acc[k] += g[k];
    }
    for (std::size_t k = 0; k < acc.size(); ++k)
      acc[k] -= (bound + 1) * g[k];
    return false;
  };
  return rec(rec, 0);
}

} // namespace zerosum
