#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "prat/cache.hpp"
#include "prat/certify.hpp"

using namespace prat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("prat_cache_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("record format round trip") {
  const CacheRecord r{-84, 4, ClassNumberMethod::Forms, "2026-01-01T00:00:00Z"};
  const auto text = format_cache_record(r);
  CHECK(text == "-84,4,forms,2026-01-01T00:00:00Z");
  const auto back = parse_cache_record(text);
  CHECK(back.discriminant == -84);
  CHECK(back.value == 4);
  CHECK(back.method == ClassNumberMethod::Forms);
  CHECK(back.timestamp == r.timestamp);
  CHECK_THROWS_AS(parse_cache_record("-84,4,forms"), Error);
  CHECK_THROWS_AS(parse_cache_record("-84,x,forms,t"), Error);
  CHECK_THROWS_AS(parse_cache_record("-84,4,guess,t"), Error);
}

TEST_CASE("cold and warm runs give identical certificates") {
  TempDir dir;
  const auto file = dir.path / "h.txt";
  std::string cold, warm;
  {
    ClassNumberCache cache(file);
    auto cert = certify_triquadratic(277, &cache);
    cold = serialize(cert);
    CHECK_FALSE(cache.records().empty());
  }
  {
    ClassNumberCache cache(file);
    CHECK_FALSE(cache.records().empty());
    warm = serialize(certify_triquadratic(277, &cache));
  }
  CHECK(cold == warm);
  CHECK(serialize(certify_triquadratic(277)) == cold);
}

TEST_CASE("compaction keeps the last record per key and drops conflicts") {
  TempDir dir;
  const auto file = dir.path / "h.txt";
  {
    std::ofstream out(file);
    out << "-23,3,forms,2026-01-01T00:00:00Z\n";
    out << "-23,3,dirichlet,2026-01-01T00:00:00Z\n";
    out << "-35,5,forms,2026-01-01T00:00:00Z\n";
    out << "-35,2,forms,2026-01-02T00:00:00Z\n";
    out << "-84,4,forms,2026-01-01T00:00:00Z\n";
    out << "-84,6,dirichlet,2026-01-01T00:00:00Z\n";
    out << "garbage line\n";
  }
  ClassNumberCache cache(file);
  CHECK(cache.conflicts_dropped() == 1);
  CHECK(cache.lookup(-23, ClassNumberMethod::Forms) == 3);
  CHECK(cache.lookup(-35, ClassNumberMethod::Forms) == 2);
  CHECK_FALSE(cache.lookup(-84, ClassNumberMethod::Forms).has_value());
  CHECK_FALSE(cache.lookup(-84, ClassNumberMethod::Dirichlet).has_value());
  CHECK(lines_of(file).size() == 3);

  // a poisoned entry that survives compaction still cannot change a verified certificate
  cache.record(-15, 7, ClassNumberMethod::Forms);
  const auto cert = certify_triquadratic(5, &cache);
  CHECK_FALSE(verify_certificate(cert));
}

TEST_CASE("concurrent writers") {
  TempDir dir;
  const auto file = dir.path / "h.txt";
  {
    ClassNumberCache cache(file);
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t)
      pool.emplace_back([&cache, t] {
        for (i64 i = 0; i < 200; ++i) cache.record(-(i * 8 + t) - 3, i, ClassNumberMethod::Forms);
      });
    for (auto& th : pool) th.join();
  }
  const auto lines = lines_of(file);
  CHECK(lines.size() == 1600);
  for (const auto& l : lines) CHECK_NOTHROW(parse_cache_record(l));
  ClassNumberCache reopened(file);
  CHECK(reopened.records().size() == 1600);
}

TEST_CASE("in-memory cache writes nothing") {
  ClassNumberCache cache;
  cache.record(-4, 1, ClassNumberMethod::Forms);
  CHECK(cache.lookup(-4, ClassNumberMethod::Forms) == 1);
  CHECK(cache.path().empty());
}
