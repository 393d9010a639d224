#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "prat/quadfield.hpp"

namespace prat {

/// One line of the cache file: "D,value,method,timestamp".
struct CacheRecord {
  i64 discriminant = 0;
  i64 value = 0;
  ClassNumberMethod method = ClassNumberMethod::Forms;
  std::string timestamp;
};

std::string format_cache_record(const CacheRecord& r);
/// Throws ParseError on malformed lines.
CacheRecord parse_cache_record(const std::string& line);

/// Append-only text cache of class numbers, compacted when opened.  An empty
/// path keeps everything in memory.  Safe for concurrent readers and writers.
class ClassNumberCache : public ClassNumberStore {
 public:
  explicit ClassNumberCache(std::filesystem::path path = {});

  /// $PRAT_CACHE when set, else $HOME/.cache/prat/class_numbers.txt.
  static std::filesystem::path default_path();

  std::optional<i64> lookup(i64 D, ClassNumberMethod method) override;
  void record(i64 D, i64 h, ClassNumberMethod method) override;

  std::vector<CacheRecord> records() const;
  /// Keys dropped on load because forms and dirichlet disagreed.
  std::size_t conflicts_dropped() const { return conflicts_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  void load_and_compact();

  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::map<std::pair<i64, ClassNumberMethod>, CacheRecord> entries_;
  std::size_t conflicts_ = 0;
};

}  // namespace prat
