#pragma once

#include "atoms.hpp"
#include "corpus.hpp"
#include "formulas.hpp"
#include "group.hpp"
#include "json.hpp"
#include "separating.hpp"
#include "verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace zerosum::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kUsage = 2, kIncomplete = 3 };

struct RunConfig {
  std::string subcommand;
  std::string group_text;
  std::optional<std::size_t> max_support_size;
  std::uint64_t budget = kDefaultNodeBudget;
  unsigned threads = 1;
  std::optional<double> timeout_secs;
  std::string cache_path;
  std::string format = "json";
  bool brute_force_hypothesis = false;
  std::optional<std::int64_t> atom_length_limit;
  std::string support_text;
  std::optional<std::int64_t> max_len;
  std::size_t element_cap = kDefaultElementCap;
};

class UsageError : public Error {
public:
  using Error::Error;
};

/// Parses "(1,0) (0,1)" into support elements of g.
inline Support parse_support(const Group &g, const std::string &text) {
  static const std::regex tuple(R"(\(([^()]*)\))");
  std::vector<GroupElement> elems;
  for (std::sregex_iterator it(text.begin(), text.end(), tuple), end; it != end;
       ++it) {
    std::vector<std::int64_t> coords;
    std::string body = (*it)[1];
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ','))
      try {
        coords.push_back(std::stoll(tok));
      } catch (const std::exception &) {
        throw UsageError("bad coordinate '" + tok + "' in support");
      }
    try {
      elems.push_back(g.element(std::move(coords)));
    } catch (const Error &e) {
      throw UsageError(e.what());
    }
  }
  if (elems.empty())
    throw UsageError("support must list elements like \"(1,0) (0,1)\"");
  try {
    return Support(g, std::move(elems));
  } catch (const Error &e) {
    throw UsageError(e.what());
  }
}

inline void render(const Json &j, const std::string &format, std::ostream &out) {
  if (format == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  for (const auto &[key, value] : j.items())
    out << key << '\t' << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
}

inline BetaSepConfig search_config(const RunConfig &rc) {
  BetaSepConfig c;
  c.threads = rc.threads;
  c.node_budget = rc.budget;
  if (rc.timeout_secs)
    c.timeout = std::chrono::milliseconds(
        static_cast<std::int64_t>(*rc.timeout_secs * 1000.0));
  c.max_support_size = rc.max_support_size;
  c.atom_length_limit = rc.atom_length_limit;
  c.element_cap = rc.element_cap;
  return c;
}

inline void validate(const RunConfig &rc, const Group *g, std::ostream &err) {
  if (rc.threads < 1)
    throw UsageError("--threads must be at least 1");
  if (rc.budget < 10'000)
    throw UsageError("--budget must be at least 10000");
  if (rc.timeout_secs && *rc.timeout_secs <= 0)
    throw UsageError("--timeout must be positive");
  if (rc.format != "json" && rc.format != "table")
    throw UsageError("--format must be json or table");
  if (g && rc.max_support_size) {
    auto def = static_cast<std::size_t>(g->rank()) + 1;
    if (*rc.max_support_size < def)
      throw UsageError("--max-support-size below rank + 1 = " +
                       std::to_string(def) + " would not be exhaustive");
    if (*rc.max_support_size > def)
      err << "note: --max-support-size " << *rc.max_support_size
          << " is experimental (exhaustive default is " << def << ")\n";
  }
}

inline int cmd_dstar(const Group &g, const RunConfig &rc, std::ostream &out) {
  render(Json{{"group", g.to_string()}, {"d_star", d_star(g)}}, rc.format, out);
  return kOk;
}

inline int cmd_davenport(const Group &g, const RunConfig &rc,
                         std::ostream &out) {
  SearchControl control(rc.budget, search_config(rc).timeout);
  Json j{{"group", g.to_string()}, {"d_star", d_star(g)}};
  auto clause = d_equals_dstar_known(g);
  j["davenport_clause"] = clause ? Json(clause->tag()) : Json(nullptr);
  bool complete;
  if (!rc.support_text.empty()) {
    auto support = parse_support(g, rc.support_text);
    auto atoms = enumerate_atoms(support, g.order(), control);
    complete = atoms.complete;
    j["support"] = to_json(support);
    j["davenport"] = atoms.longest();
  } else {
    auto r = zero_sum_free_search(g, control, rc.element_cap);
    complete = r.complete;
    j["davenport"] = r.length + 1;
    j["zero_sum_free_witness"] =
        to_json(ZSequence(Support::all_nonzero(g, rc.element_cap), r.witness))["text"];
  }
  j["complete"] = complete;
  render(j, rc.format, out);
  return complete ? kOk : kIncomplete;
}

inline int cmd_atoms(const Group &g, const RunConfig &rc, std::ostream &out) {
  auto support = rc.support_text.empty()
                     ? Support::all_nonzero(g, rc.element_cap)
                     : parse_support(g, rc.support_text);
  SearchControl control(rc.budget, search_config(rc).timeout);
  auto atoms = enumerate_atoms(support, rc.max_len.value_or(d_star(g)), control);
  auto j = to_json(atoms);
  j["group"] = g.to_string();
  render(j, rc.format, out);
  return atoms.complete ? kOk : kIncomplete;
}

inline int cmd_beta_sep(const Group &g, const RunConfig &rc, std::ostream &out) {
  auto r = beta_sep(g, search_config(rc));
  render(to_json(r, rc.threads), rc.format, out);
  return r.complete ? kOk : kIncomplete;
}

inline Json bounds_json(const Group &g, const RunConfig &rc) {
  Json j{{"group", g.to_string()},
         {"d_star", d_star(g)},
         {"lower", beta_sep_lower_bound(g)},
         {"upper_generic", beta_sep_upper_bound_generic(g)},
         {"tail_sum", beta_sep_tail_sum(g)}};
  auto clause = d_equals_dstar_known(g);
  j["davenport_clause"] =
      clause ? Json(clause->tag() + " " + clause->detail) : Json(nullptr);
  if (g.rank() >= 2) {
    TheoremOptions opts;
    opts.brute_force_hypothesis = rc.brute_force_hypothesis;
    opts.node_budget = rc.budget;
    opts.element_cap = rc.element_cap;
    j["theorem"] = to_json(main_theorem_value(g, opts));
    auto cor = corollary_values(g);
    j["corollary"] = cor ? Json(cor->value) : Json(nullptr);
    j["corollary_source"] = cor ? Json(cor->source) : Json(nullptr);
  } else {
    j["theorem"] = nullptr;
    j["corollary"] = nullptr;
    j["corollary_source"] = nullptr;
  }
  return j;
}

inline int cmd_bounds(const Group &g, const RunConfig &rc, std::ostream &out) {
  render(bounds_json(g, rc), rc.format, out);
  return kOk;
}

inline VerifyConfig verify_config(const RunConfig &rc) {
  VerifyConfig vc;
  vc.search = search_config(rc);
  vc.theorem.brute_force_hypothesis = rc.brute_force_hypothesis;
  vc.theorem.node_budget = rc.budget;
  vc.theorem.element_cap = rc.element_cap;
  return vc;
}

inline int cmd_verify(const Group &g, const RunConfig &rc, std::ostream &out) {
  auto rep = verify_group(g, verify_config(rc));
  render(to_json(rep, rc.threads), rc.format, out);
  switch (rep.status) {
  case Status::Pass:
    return kOk;
  case Status::Fail:
    return kFail;
  case Status::Incomplete:
    return kIncomplete;
  }
  return kFail;
}

inline int cmd_corpus(const RunConfig &rc, std::ostream &out) {
  std::ifstream in(rc.group_text);
  if (!in)
    throw UsageError("cannot open manifest '" + rc.group_text + "'");
  auto entries = read_manifest(in, rc.budget);
  ResultCache cache = rc.cache_path.empty() ? ResultCache()
                                            : ResultCache(rc.cache_path);
  return corpus_run(entries, verify_config(rc), cache, out).exit_code();
}

/// Entry point shared by the executable and the tests. Data goes to `out`,
/// diagnostics to `err`.
inline int run(int argc, const char *const *argv, std::ostream &out,
               std::ostream &err) {
  CLI::App app{"Exact zero-sum engine: Davenport constants, atoms, and "
               "separating Noether numbers of finite abelian groups"};
  app.require_subcommand(1);
  RunConfig rc;

  struct Command {
    const char *name;
    const char *help;
    const char *positional;
  };
  const Command commands[] = {
      {"dstar", "D*(G) = 1 + sum (n_i - 1)", "factors"},
      {"davenport", "brute-force Davenport constant", "factors"},
      {"atoms", "enumerate minimal zero-sum sequences over a support", "factors"},
      {"beta-sep", "separating Noether number by exhaustive search", "factors"},
      {"bounds", "closed-form bounds and values", "factors"},
      {"verify", "cross-check brute force against the closed forms", "factors"},
      {"corpus", "verify every group listed in a manifest, JSONL output",
       "manifest"},
  };
  for (const auto &s : commands) {
    auto *sub = app.add_subcommand(s.name, s.help);
    sub->add_option(s.positional, rc.group_text,
                    std::string(s.positional) == "factors"
                        ? "invariant factors, e.g. 2,2,4"
                        : "manifest path")
        ->required();
    sub->add_option("--threads", rc.threads, "worker threads");
    sub->add_option("--budget", rc.budget, "DFS node budget per search");
    sub->add_option("--timeout", rc.timeout_secs, "wall-clock limit in seconds");
    sub->add_option("--max-support-size", rc.max_support_size,
                    "experimental: search supports up to this size");
    sub->add_option("--atom-length-limit", rc.atom_length_limit,
                    "enumerate atoms beyond D*(G) to audit the length bound");
    sub->add_flag("--brute-force-hypothesis", rc.brute_force_hypothesis,
                  "certify D = D* on n_s G by brute force when no clause applies");
    sub->add_option("--cache", rc.cache_path, "JSONL result cache");
    sub->add_option("--format", rc.format, "json or table");
    sub->add_option("--support", rc.support_text,
                    "support elements, e.g. \"(1,0) (0,1)\"");
    sub->add_option("--max-len", rc.max_len, "longest atom to enumerate");
    sub->add_option("--element-cap", rc.element_cap, "largest group order");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  }
  rc.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (rc.subcommand == "corpus") {
      validate(rc, nullptr, err);
      return cmd_corpus(rc, out);
    }
    std::optional<Group> parsed;
    try {
      parsed = Group::parse(rc.group_text);
    } catch (const Error &e) {
      throw UsageError(e.what());
    }
    const auto &g = *parsed;
    validate(rc, &g, err);
    if (rc.subcommand == "dstar")
      return cmd_dstar(g, rc, out);
    if (rc.subcommand == "davenport")
      return cmd_davenport(g, rc, out);
    if (rc.subcommand == "atoms")
      return cmd_atoms(g, rc, out);
    if (rc.subcommand == "beta-sep")
      return cmd_beta_sep(g, rc, out);
    if (rc.subcommand == "bounds")
      return cmd_bounds(g, rc, out);
    if (rc.subcommand == "verify")
      return cmd_verify(g, rc, out);
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const GroupTooLarge &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError &e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded &e) {
    err << "incomplete: " << e.what() << '\n';
    return kIncomplete;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}

} // namespace zerosum::cli
