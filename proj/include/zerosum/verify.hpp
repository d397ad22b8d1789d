#pragma once

#include "atoms.hpp"
#include "formulas.hpp"
#include "group.hpp"
#include "json.hpp"
#include "separating.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace zerosum {

inline constexpr const char *kEngineVersion = "zerosum-1.0.0";

enum class Status { Pass, Fail, Incomplete };

inline std::string to_string(Status s) {
  switch (s) {
  case Status::Pass:
    return "PASS";
  case Status::Fail:
    return "FAIL";
  case Status::Incomplete:
    return "INCOMPLETE";
  }
  return "?";
}

struct BoundCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyConfig {
  BetaSepConfig search;
  TheoremOptions theorem;
};

/// Brute force set against every closed form that applies to one group.
struct VerifyReport {
  Group group;
  BetaSepResult search;
  std::optional<std::int64_t> computed_davenport;
  std::int64_t davenport_partial = 0;
  std::int64_t d_star = 0;
  std::optional<ClauseMatch> clause;
  std::int64_t lower = 0;
  std::int64_t upper_generic = 0;
  std::int64_t tail_sum = 0;
  std::optional<TheoremOutcome> theorem;
  std::optional<CorollaryValue> corollary;
  /// The value the closed forms predict and where it comes from.
  std::optional<std::int64_t> formula_beta_sep;
  std::string formula_source;
  std::vector<BoundCheck> checks;
  Status status = Status::Incomplete;
  std::chrono::milliseconds elapsed{0};
};

inline VerifyReport verify_group(const Group &g, const VerifyConfig &cfg = {}) {
  auto started = std::chrono::steady_clock::now();
  VerifyReport rep{g, beta_sep(g, cfg.search)};
  rep.d_star = d_star(g);
  rep.clause = d_equals_dstar_known(g);
  rep.lower = beta_sep_lower_bound(g);
  rep.upper_generic = beta_sep_upper_bound_generic(g);
  rep.tail_sum = beta_sep_tail_sum(g);

  SearchControl dcontrol(cfg.search.node_budget, cfg.search.timeout);
  auto zsf = zero_sum_free_search(g, dcontrol, cfg.search.element_cap);
  rep.davenport_partial = zsf.length + 1;
  if (zsf.complete)
    rep.computed_davenport = zsf.length + 1;

  if (g.rank() >= 2) {
    rep.theorem = main_theorem_value(g, cfg.theorem);
    rep.corollary = corollary_values(g);
  }
  if (rep.corollary) {
    rep.formula_beta_sep = rep.corollary->value;
    rep.formula_source = "corollary:" + rep.corollary->source;
  } else if (rep.theorem && rep.theorem->kind == TheoremKind::Exact) {
    rep.formula_beta_sep = rep.theorem->value;
    rep.formula_source = "theorem:exact";
  } else if (g.rank() == 1) {
    rep.formula_source = "n/a, rank 1";
  } else {
    rep.formula_source = "n/a";
  }

  auto check = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  auto v = rep.search.value;
  auto num = [](auto x) { return std::to_string(x); };
  if (rep.search.complete) {
    if (rep.formula_beta_sep)
      check("formula_equality", v == *rep.formula_beta_sep,
            num(v) + " vs " + num(*rep.formula_beta_sep) + " (" +
                rep.formula_source + ")");
    if (rep.theorem && rep.theorem->kind == TheoremKind::Exact)
      check("theorem_exact", v == rep.theorem->value,
            num(v) + " == " + num(rep.theorem->value));
    if (rep.theorem && rep.theorem->kind == TheoremKind::UpperBoundOnly)
      check("theorem_upper_bound", v <= rep.theorem->value,
            num(v) + " <= " + num(rep.theorem->value));
    check("lower_bound", rep.lower <= v, num(rep.lower) + " <= " + num(v));
    check("upper_bound_generic", v <= rep.upper_generic,
          num(v) + " <= " + num(rep.upper_generic));
    check("exceeds_tail_sum", v > rep.tail_sum,
          num(v) + " > " + num(rep.tail_sum));
  }
  // The search throws on any separating atom longer than D*; this records
  // the longest it actually saw, complete or not.
  check("separating_length_bound",
        rep.search.longest_separating_seen <= rep.d_star &&
            v <= rep.d_star,
        num(rep.search.longest_separating_seen) + " <= " + num(rep.d_star));
  if (rep.computed_davenport) {
    auto d = *rep.computed_davenport;
    check("davenport_at_least_dstar", d >= rep.d_star,
          num(d) + " >= " + num(rep.d_star));
    check("davenport_at_most_order", d <= g.order(),
          num(d) + " <= " + num(g.order()));
    if (rep.clause)
      check("davenport_equals_dstar", d == rep.d_star,
            num(d) + " == " + num(rep.d_star) + " (" + rep.clause->tag() +
                ")");
  }

  bool failed = false;
  for (const auto &c : rep.checks)
    failed = failed || !c.pass;
  if (failed)
    rep.status = Status::Fail;
  else if (!rep.search.complete || !rep.computed_davenport)
    rep.status = Status::Incomplete;
  else
    rep.status = Status::Pass;
  rep.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  return rep;
}

inline Json to_json(const VerifyReport &r, unsigned threads = 1) {
  Json checks = Json::array();
  for (const auto &c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  auto search = to_json(r.search, threads);
  Json out{
      {"group", r.group.to_string()},
      {"status", to_string(r.status)},
      {"computed_beta_sep",
       r.search.complete ? Json(r.search.value) : Json(nullptr)},
      {"beta_sep_lower_certified", r.search.value},
      {"formula_beta_sep",
       r.formula_beta_sep ? Json(*r.formula_beta_sep) : Json(nullptr)},
      {"formula_source", r.formula_source},
      {"computed_davenport",
       r.computed_davenport ? Json(*r.computed_davenport) : Json(nullptr)},
      {"d_star", r.d_star},
      {"davenport_clause", r.clause ? Json(r.clause->tag() + " " + r.clause->detail)
                                    : Json(nullptr)},
      {"lower", r.lower},
      {"upper_generic", r.upper_generic},
      {"tail_sum", r.tail_sum},
      {"theorem", r.theorem ? to_json(*r.theorem) : Json(nullptr)},
      {"bound_checks", checks},
      {"witness", search["witness"]},
      {"supports_examined", search["supports_examined"]},
      {"engine", kEngineVersion}};
  if (search.contains("non_separating_example_witness"))
    out["non_separating_example_witness"] =
        search["non_separating_example_witness"];
  auto meta = search["meta"];
  meta["elapsed_ms"] = r.elapsed.count();
  meta["beta_sep_elapsed_ms"] = r.search.elapsed.count();
  out["meta"] = meta;
  return out;
}

} // namespace zerosum
