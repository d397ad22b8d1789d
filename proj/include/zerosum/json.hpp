#pragma once

#include "atoms.hpp"
#include "formulas.hpp"
#include "group.hpp"
#include "lattice.hpp"
#include "separating.hpp"
#include "sequence.hpp"

#include <json.hpp>

#include <limits>

namespace zerosum {

using Json = nlohmann::json;

inline Json to_json(const GroupElement &g) {
  return Json(std::vector<std::int64_t>(g.coords().begin(), g.coords().end()));
}

inline Json to_json(const Support &s) {
  Json out = Json::array();
  for (const auto &e : s.elements())
    out.push_back(to_json(e));
  return out;
}

inline Json to_json(const ZSequence &s) {
  return Json{{"support", to_json(s.support())},
              {"mult", std::vector<std::int64_t>(s.multiplicities().begin(),
                                                 s.multiplicities().end())},
              {"text", s.to_string()}};
}

/// Integers that fit a machine word become JSON numbers, others strings.
inline Json to_json(const BigInt &v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Json to_json(const std::vector<BigInt> &v) {
  Json out = Json::array();
  for (const auto &x : v)
    out.push_back(to_json(x));
  return out;
}

inline Json to_json(const AtomSet &atoms) {
  Json by_len = Json::object();
  for (std::size_t l = 0; l < atoms.by_length.size(); ++l)
    if (!atoms.by_length[l].empty())
      by_len[std::to_string(l)] = atoms.by_length[l];
  return Json{{"support", to_json(atoms.support)},
              {"max_len", atoms.max_len},
              {"complete", atoms.complete},
              {"count", atoms.count()},
              {"atoms_by_length", by_len}};
}

inline Json to_json(const TheoremOutcome &t) {
  return Json{{"kind", to_string(t.kind)},
              {"value", t.value},
              {"s", t.s},
              {"p", t.p},
              {"subgroup", to_string(t.subgroup)},
              {"hypothesis_checked_by", t.hypothesis_checked_by},
              {"detail", t.detail}};
}

inline Json to_json(const SeparatingWitness &w) {
  return Json{{"support", to_json(w.support)},
              {"atom", to_json(w.atom)},
              {"length", w.length},
              {"basis_size", w.basis_size}};
}

inline Json to_json(const NonSeparatingExample &e) {
  return Json{{"atom", to_json(e.atom)},
              {"shorter_atoms", e.shorter_atoms},
              {"coefficients", to_json(e.coefficients)}};
}

/// Deterministic payload plus a `meta` object holding timing and work
/// counters, which may vary between runs and worker counts.
inline Json to_json(const BetaSepResult &r, unsigned threads = 1) {
  Json out{{"group", r.group.to_string()},
           {"value", r.value},
           {"complete", r.complete},
           {"d_star", r.length_bound},
           {"supports_examined", r.supports_examined},
           {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)}};
  if (r.non_separating)
    out["non_separating_example_witness"] = to_json(*r.non_separating);
  out["meta"] = Json{{"elapsed_ms", r.elapsed.count()},
                     {"nodes", r.nodes},
                     {"atoms_tested", r.atoms_tested},
                     {"separating_atoms_seen", r.separating_atoms_seen},
                     {"longest_separating_seen", r.longest_separating_seen},
                     {"threads", threads}};
  return out;
}

/// Drops the `meta` object so payloads can be compared byte for byte.
inline Json without_meta(Json j) {
  if (j.is_object())
    j.erase("meta");
  return j;
}

} // namespace zerosum
