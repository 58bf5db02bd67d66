#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rado/json_io.hpp"
#include "rado/linear_system.hpp"
#include "rado/search.hpp"
#include "rado/version.hpp"

namespace rado {

/// One computed result: the canonical system key, the mode, the outcome with
/// its witness, and provenance (engine version, nodes, wall time).
struct result_record {
  std::string system_text;
  std::string key;
  std::string mode;
  search_outcome outcome;
  std::uint64_t ms = 0;
  std::string engine = engine_version;
};

inline json record_to_json(const result_record& rec) {
  json j;
  j["system"] = rec.system_text;
  j["key"] = rec.key;
  j["mode"] = rec.mode;
  j["outcome"] = outcome_to_json(rec.outcome);
  j["witness"] = coloring_to_json(rec.outcome.witness);
  j["nodes"] = rec.outcome.nodes;
  j["ms"] = rec.ms;
  j["engine"] = rec.engine;
  return j;
}

inline result_record record_from_json(const json& j) {
  result_record rec;
  rec.system_text = j.at("system").get<std::string>();
  rec.key = j.at("key").get<std::string>();
  rec.mode = j.at("mode").get<std::string>();
  rec.outcome = outcome_from_json(j.at("outcome"), j.at("witness"), j.value("nodes", std::uint64_t{0}));
  rec.ms = j.value("ms", std::uint64_t{0});
  rec.engine = j.value("engine", std::string{});
  return rec;
}

/// Append-only JSON Lines store of result records, keyed by
/// canonical_key + mode + engine version. Blank lines are tolerated (a
/// truncated trailing line from a crash is not a valid record and is
/// rejected on load). Exact records are immutable facts and the only ones
/// reused; lower bounds depend on the run's caps so they are recorded for
/// provenance but never satisfy a lookup.
class result_cache {
 public:
  explicit result_cache(std::string path) : path_(std::move(path)) { load(); }

  /// $RADO_CACHE when set, else ./rado_cache.jsonl.
  static std::string default_path() {
    if (const char* env = std::getenv("RADO_CACHE"); env && *env) return env;
    return "rado_cache.jsonl";
  }

  const std::string& path() const { return path_; }
  std::size_t size() const { return records_.size(); }

  /// Latest Exact record for (key, mode) written by this engine version.
  /// The stored witness is re-verified against `sys` before it is returned;
  /// a record that no longer verifies is a corrupted store.
  std::optional<result_record> lookup(const constraint_system& sys, const coloring_mode& mode) const {
    const std::string key = canonical_key(sys);
    const std::string mode_key = mode.key();
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
      if (it->key != key || it->mode != mode_key || it->engine != engine_version) continue;
      if (it->outcome.kind != outcome_kind::exact) continue;
      certificate cert = verify_coloring(sys, it->outcome.witness, mode);
      if (!cert.valid)
        throw std::runtime_error("cache: witness in " + path_ + " fails re-verification for key " + key);
      return *it;
    }
    return std::nullopt;
  }

  /// Appends one record and flushes it.
  void append(const result_record& rec) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cache: cannot open " + path_ + " for append");
    out << record_to_json(rec).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cache: write to " + path_ + " failed");
    records_.push_back(rec);
  }

 private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;  // fresh cache
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        records_.push_back(record_from_json(json::parse(line)));
      } catch (const std::exception& e) {
        throw std::runtime_error("cache: " + path_ + ":" + std::to_string(lineno) +
                                 " is not a valid record (" + e.what() + ")");
      }
    }
  }

  std::string path_;
  std::vector<result_record> records_;
};

}  // namespace rado
