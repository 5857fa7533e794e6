#include "redei/cache.hpp"

#include <cstdlib>
#include <fstream>

#include "redei/errors.hpp"

namespace redei {

std::string default_cache_path() {
  const char* s = std::getenv("REDEI_CACHE");
  return s && *s ? s : "redei_cache.jsonl";
}

ResultCache::ResultCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json rec = Json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("command") || !rec.contains("params") ||
        !rec.contains("engine_version") || !rec.contains("result"))
      continue;
    // First record wins: records are immutable once written.
    records_.emplace(key(rec["command"].get<std::string>(), rec["params"], rec["engine_version"].get<std::string>()),
                     rec);
  }
}

std::string ResultCache::key(const std::string& command, const Json& params, const std::string& engine) {
  return command + '\n' + params.dump() + '\n' + engine;
}

std::optional<Json> ResultCache::lookup(const std::string& command, const Json& params) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = records_.find(key(command, params, kEngineVersion));
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void ResultCache::insert(const Json& record) {
  const std::string k =
      key(record.at("command").get<std::string>(), record.at("params"), record.at("engine_version").get<std::string>());
  std::lock_guard<std::mutex> lock(mu_);
  if (records_.count(k)) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot append to cache " + path_);
  out << record.dump() << '\n';
  out.flush();
  records_.emplace(k, record);
}

std::size_t ResultCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

}  // namespace redei
