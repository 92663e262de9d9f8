#pragma once

#include "freyforge/search.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace freyforge::report {

using nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kCacheVersion = 1;

const char* toolkit_version();

// Elements are written as "x" or "x,y" (coordinates in the integral basis), the same text --a/--b/--c accept.
ordered_json element_json(const FieldElement& e);
ordered_json field_json(const QuadraticField& field, const ClassData& data);
ordered_json prime_json(const PrimeIdealAbove& prime);
ordered_json solution_json(const Solution& s);
ordered_json frey_json(const FreyCurve& curve);
ordered_json class_data_json(const ClassData& data);
ordered_json tk_json(const TkResult& r);
ordered_json hypothesis_json(const HypothesisReport& r);
ordered_json audit_json(const AuditReport& r);

// {"schema_version", "toolkit_version", "command", "inputs", "results"} plus "cache_hit" when a cache was consulted.
ordered_json envelope(const std::string& command, ordered_json inputs, ordered_json results,
                      std::optional<bool> cache_hit = std::nullopt);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC 4180 quoting, LF line endings.
std::string to_csv(const Table& table);

struct TabulateRow {
  long d = 0;
  ClassData data;
  Splitting two_splitting = Splitting::Inert;
  bool h1 = false;
};

Table tabulate_table(const std::vector<TabulateRow>& rows);

// One JSON document per d; an advisory lock file serializes writers.
class FieldCache {
 public:
  explicit FieldCache(std::filesystem::path dir);

  struct Lookup {
    ClassData data;
    bool hit = false;
  };

  std::optional<ClassData> read(const QuadraticField& field) const;
  void write(const QuadraticField& field, const ClassData& data) const;
  Lookup class_data(const QuadraticField& field, const Limits& limits = {}) const;

  std::filesystem::path entry_path(const QuadraticField& field) const;

 private:
  std::filesystem::path dir_;
};

// FREYFORGE_CACHE_DIR wins over the flag; empty when neither is set.
std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag_value);

}  // namespace freyforge::report
