#include "prat/cache.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

namespace prat {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_cache_record(const CacheRecord& r) {
  return std::to_string(r.discriminant) + "," + std::to_string(r.value) + "," + method_name(r.method) + "," +
         r.timestamp;
}

CacheRecord parse_cache_record(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream is(line);
  std::string f;
  while (std::getline(is, f, ',')) fields.push_back(f);
  if (fields.size() != 4) throw Error(Errc::ParseError, "cache line needs 4 fields: '" + line + "'");
  CacheRecord r;
  try {
    std::size_t pos = 0;
    r.discriminant = std::stoll(fields[0], &pos);
    if (pos != fields[0].size()) throw Error(Errc::ParseError, "bad key");
    r.value = std::stoll(fields[1], &pos);
    if (pos != fields[1].size()) throw Error(Errc::ParseError, "bad value");
  } catch (const std::logic_error&) {
    throw Error(Errc::ParseError, "bad number in cache line '" + line + "'");
  }
  r.method = method_from_name(fields[2]);
  r.timestamp = fields[3];
  return r;
}

ClassNumberCache::ClassNumberCache(std::filesystem::path path) : path_(std::move(path)) {
  if (!path_.empty()) load_and_compact();
}

std::filesystem::path ClassNumberCache::default_path() {
  if (const char* env = std::getenv("PRAT_CACHE"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "prat" / "class_numbers.txt";
  return "prat_class_numbers.txt";
}

void ClassNumberCache::load_and_compact() {
  std::ifstream in(path_);
  if (in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        const CacheRecord r = parse_cache_record(line);
        entries_[{r.discriminant, r.method}] = r;
      } catch (const Error&) {
        // unreadable lines are dropped by compaction
      }
    }
  }
  std::set<i64> conflicting;
  for (const auto& [key, rec] : entries_) {
    if (key.second != ClassNumberMethod::Forms) continue;
    auto other = entries_.find({key.first, ClassNumberMethod::Dirichlet});
    if (other != entries_.end() && other->second.value != rec.value) conflicting.insert(key.first);
  }
  for (i64 D : conflicting) {
    entries_.erase({D, ClassNumberMethod::Forms});
    entries_.erase({D, ClassNumberMethod::Dirichlet});
  }
  conflicts_ = conflicting.size();

  std::filesystem::create_directories(path_.parent_path().empty() ? "." : path_.parent_path());
  const auto tmp = std::filesystem::path(path_.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (const auto& [key, rec] : entries_) out << format_cache_record(rec) << "\n";
  }
  std::filesystem::rename(tmp, path_);
}

std::optional<i64> ClassNumberCache::lookup(i64 D, ClassNumberMethod method) {
  std::lock_guard lock(mutex_);
  auto it = entries_.find({D, method});
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

void ClassNumberCache::record(i64 D, i64 h, ClassNumberMethod method) {
  std::lock_guard lock(mutex_);
  auto it = entries_.find({D, method});
  if (it != entries_.end() && it->second.value == h) return;
  CacheRecord r{D, h, method, utc_timestamp()};
  entries_[{D, method}] = r;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  out << format_cache_record(r) << "\n";
}

std::vector<CacheRecord> ClassNumberCache::records() const {
  std::lock_guard lock(mutex_);
  std::vector<CacheRecord> out;
  for (const auto& [key, rec] : entries_) out.push_back(rec);
  return out;
}

}  // namespace prat
