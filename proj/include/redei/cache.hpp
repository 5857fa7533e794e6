#pragma once

// Append-only JSONL cache of ReportRecords.  A record is reused only when its
// command, params and engine_version match exactly.

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "redei/report_json.hpp"

namespace redei {

/// REDEI_CACHE, or "redei_cache.jsonl" in the working directory.
std::string default_cache_path();

class ResultCache {
 public:
  /// Loads existing records; unreadable lines are skipped, never rewritten.
  explicit ResultCache(std::string path);

  std::optional<Json> lookup(const std::string& command, const Json& params) const;
  /// Appends the record unless an identical key is already present.  Writers are
  /// serialized, so concurrent inserts of the same result are idempotent.
  void insert(const Json& record);

  const std::string& path() const { return path_; }
  std::size_t size() const;

 private:
  static std::string key(const std::string& command, const Json& params, const std::string& engine);

  std::string path_;
  mutable std::mutex mu_;
  std::map<std::string, Json> records_;
};

}  // namespace redei
