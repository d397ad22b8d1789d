#pragma once

#include "json.hpp"
#include "verify.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace zerosum {

/// One manifest line: "<factors> [budget=N]". Blank lines and text after
/// '#' are ignored.
struct ManifestEntry {
  std::string group;
  std::uint64_t budget = kDefaultNodeBudget;
};

inline std::vector<ManifestEntry>
read_manifest(std::istream &in, std::uint64_t default_budget) {
  std::vector<ManifestEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok))
      continue;
    ManifestEntry e{tok, default_budget};
    while (tokens >> tok) {
      if (tok.rfind("budget=", 0) != 0)
        throw ParseError("manifest line " + std::to_string(lineno) +
                         ": unknown field '" + tok + "'");
      try {
        e.budget = std::stoull(tok.substr(7));
      } catch (const std::exception &) {
        throw ParseError("manifest line " + std::to_string(lineno) +
                         ": bad budget '" + tok + "'");
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

/// Completed verify payloads keyed by (group, engine version, budget),
/// optionally persisted as JSONL: {"key": ..., "payload": ...} per line.
class ResultCache {
public:
  ResultCache() = default;
  explicit ResultCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty())
        continue;
      auto j = Json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("key") || !j.contains("payload"))
        continue;
      entries_[j["key"].get<std::string>()] = j["payload"];
    }
  }

  static std::string key(const std::string &group, std::uint64_t budget) {
    return group + "|" + kEngineVersion + "|" + std::to_string(budget);
  }

  const Json *find(const std::string &key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  void store(const std::string &key, const Json &payload) {
    entries_[key] = payload;
    if (!path_.empty()) {
      std::ofstream out(path_, std::ios::app);
      out << Json{{"key", key}, {"payload", payload}}.dump() << '\n';
    }
  }

private:
  std::string path_;
  std::map<std::string, Json> entries_;
};

struct CorpusSummary {
  std::size_t total = 0, pass = 0, fail = 0, incomplete = 0, errors = 0,
              cached = 0;

  int exit_code() const {
    if (fail || errors)
      return 1;
    if (incomplete)
      return 3;
    return 0;
  }
};

inline Json to_json(const CorpusSummary &s) {
  return Json{{"summary",
               {{"total", s.total},
                {"pass", s.pass},
                {"fail", s.fail},
                {"incomplete", s.incomplete},
                {"errors", s.errors},
                {"cached", s.cached}}}};
}

/// Verifies every manifest entry in order, writing one JSON line each and
/// a final summary line. Only complete (PASS or FAIL) results are cached.
inline CorpusSummary corpus_run(const std::vector<ManifestEntry> &entries,
                                const VerifyConfig &base, ResultCache &cache,
                                std::ostream &jsonl) {
  CorpusSummary sum;
  for (const auto &e : entries) {
    ++sum.total;
    auto key = ResultCache::key(e.group, e.budget);
    Json line;
    if (const auto *hit = cache.find(key)) {
      line = *hit;
      line["meta"] = Json{{"cached", true}};
      ++sum.cached;
    } else {
      try {
        auto g = Group::parse(e.group);
        auto cfg = base;
        cfg.search.node_budget = e.budget;
        cfg.theorem.node_budget = e.budget;
        auto report = verify_group(g, cfg);
        line = to_json(report, cfg.search.threads);
        auto payload = without_meta(line);
        if (report.status != Status::Incomplete)
          cache.store(key, payload);
        line["meta"]["cached"] = false;
      } catch (const std::exception &ex) {
        line = Json{{"group", e.group}, {"status", "ERROR"}, {"error", ex.what()}};
      }
    }
    auto status = line.value("status", std::string("ERROR"));
    if (status == "PASS")
      ++sum.pass;
    else if (status == "FAIL")
      ++sum.fail;
    else if (status == "INCOMPLETE")
      ++sum.incomplete;
    else
      ++sum.errors;
    jsonl << line.dump() << '\n';
    jsonl.flush();
  }
  jsonl << to_json(sum).dump() << '\n';
  return sum;
}

} // namespace zerosum
