#include "doctest.h"
#include "freyforge/report.hpp"
#include "support.hpp"

#include <cstdlib>
#include <fstream>

#include <unistd.h>

using namespace freyforge;
using namespace freyforge::report;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("freyforge_report_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("csv quoting") {
  Table t{{"a", "b"}, {{"1", "x,y"}, {"he said \"hi\"", "line\nbreak"}, {"", "plain"}}};
  CHECK(to_csv(t) == "a,b\n1,\"x,y\"\n\"he said \"\"hi\"\"\",\"line\nbreak\"\n,plain\n");
  CHECK(to_csv(Table{{"only"}, {}}) == "only\n");
}

TEST_CASE("envelope layout") {
  auto doc = envelope("frey", {{"d", 1}}, {{"x", "1"}});
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"schema_version", "toolkit_version", "command", "inputs", "results"});
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["toolkit_version"] == toolkit_version());
  doc = envelope("check", {}, {}, true);
  CHECK(doc["cache_hit"] == true);
}

TEST_CASE("element and solution text") {
  const auto k5 = QuadraticField::make(5);
  CHECK(element_json(FieldElement(k5, 3, -2)) == "3,-2");
  CHECK(element_json(FieldElement(k5, 7)) == "7");
  const auto q = QuadraticField::make(1);
  const auto s = solution_json({FieldElement(q, 11), FieldElement(q, 122), FieldElement(q, -3), 5});
  CHECK(s.dump() == R"({"a":"11","b":"122","c":"-3","p":5})");
  const auto f = frey_json(build_frey({FieldElement(q, 11), FieldElement(q, 122), FieldElement(q, -3), 5}));
  CHECK(f["delta"] == "-30233088");
}

TEST_CASE("tabulate table columns") {
  const auto t = tabulate_table({{5, class_data(QuadraticField::make(5)), Splitting::Inert, true},
                                 {-5, class_data(QuadraticField::make(-5)), Splitting::Ramified, false}});
  CHECK(to_csv(t) == "d,h,h_plus,splitting,h1\n5,1,1,inert,true\n-5,2,2,ramified,false\n");
}

TEST_CASE("field cache round trip") {
  const fs::path dir = scratch("cache");
  const FieldCache cache(dir);
  for (long d : {1L, -5L, 79L, 94L, -23L}) {
    const auto field = QuadraticField::make(d);
    CHECK_FALSE(cache.read(field));
    const auto miss = cache.class_data(field);
    CHECK_FALSE(miss.hit);
    const auto hit = cache.class_data(field);
    CHECK(hit.hit);
    CHECK(hit.data == miss.data);
    CHECK(hit.data == class_data(field));
    CHECK(class_data_json(hit.data).dump() == class_data_json(class_data(field)).dump());
  }
  const auto field = QuadraticField::make(79);
  auto entry = nlohmann::json::parse(std::ifstream(cache.entry_path(field)));
  CHECK(entry["d"] == 79);
  CHECK(entry["disc"] == 316);
  CHECK(entry["cache_version"] == kCacheVersion);
  CHECK(entry.contains("timestamp"));
  CHECK(entry["toolkit_version"] == toolkit_version());

  entry["toolkit_version"] = "0.0.0-old";
  std::ofstream(cache.entry_path(field)) << entry.dump();
  CHECK_FALSE(cache.read(field));
  std::ofstream(cache.entry_path(field)) << "{ not json";
  CHECK_FALSE(cache.read(field));
  CHECK_FALSE(cache.class_data(field).hit);
  CHECK(cache.class_data(field).hit);
  fs::remove_all(dir);
}

TEST_CASE("cache directory resolution") {
  ::unsetenv("FREYFORGE_CACHE_DIR");
  CHECK_FALSE(resolve_cache_dir(""));
  CHECK(resolve_cache_dir("/tmp/x") == fs::path("/tmp/x"));
  ::setenv("FREYFORGE_CACHE_DIR", "/tmp/from_env", 1);
  CHECK(resolve_cache_dir("/tmp/x") == fs::path("/tmp/from_env"));
  CHECK(resolve_cache_dir("") == fs::path("/tmp/from_env"));
  ::unsetenv("FREYFORGE_CACHE_DIR");
}
