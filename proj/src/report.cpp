#include "freyforge/report.hpp"

#include "freyforge/error.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace freyforge::report {

const char* toolkit_version() { return FREYFORGE_VERSION; }

ordered_json element_json(const FieldElement& e) { return e.to_string(); }

namespace {

std::string basis_text(const QuadraticField& field) {
  if (field.is_rational()) return "1";
  if (field.basis_kind() == BasisKind::Half) return "1, (1+sqrt(" + std::to_string(field.d()) + "))/2";
  return "1, sqrt(" + std::to_string(field.d()) + ")";
}

Splitting two_splitting(const QuadraticField& field) {
  const auto primes = s_k(field);
  return primes.size() == 2 ? Splitting::Split : primes.front().splitting;
}

}  // namespace

ordered_json class_data_json(const ClassData& data) {
  ordered_json j;
  j["h"] = data.h;
  j["h_plus"] = data.h_plus;
  j["fundamental_unit"] = data.fundamental_unit ? element_json(*data.fundamental_unit) : ordered_json(nullptr);
  j["unit_norm"] = data.unit_norm;
  return j;
}

ordered_json prime_json(const PrimeIdealAbove& prime) {
  ordered_json j;
  j["label"] = prime.to_string();
  j["rational_prime"] = prime.rational_prime.get_str();
  j["generator"] = element_json(prime.pi);
  j["e"] = prime.e;
  j["f"] = prime.f;
  j["splitting"] = to_string(prime.splitting);
  return j;
}

ordered_json field_json(const QuadraticField& field, const ClassData& data) {
  ordered_json j;
  j["d"] = field.d();
  j["disc"] = field.disc();
  j["name"] = field.name();
  j["basis"] = basis_text(field);
  j["two_splitting"] = to_string(two_splitting(field));
  ordered_json primes = ordered_json::array();
  for (const PrimeIdealAbove& prime : s_k(field)) primes.push_back(prime_json(prime));
  j["s_k"] = primes;
  const ordered_json cd = class_data_json(data);
  for (const auto& [k, v] : cd.items()) j[k] = v;
  return j;
}

ordered_json solution_json(const Solution& s) {
  ordered_json j;
  j["a"] = element_json(s.a);
  j["b"] = element_json(s.b);
  j["c"] = element_json(s.c);
  j["p"] = s.p;
  return j;
}

ordered_json frey_json(const FreyCurve& curve) {
  ordered_json j;
  j["model"] = "y^2 = x^3 + a2 x^2 + a4 x";
  j["a2"] = element_json(curve.a2);
  j["a4"] = element_json(curve.a4);
  j["delta"] = element_json(curve.delta);
  j["c4"] = element_json(curve.c4);
  j["j"] = element_json(curve.j());
  return j;
}

ordered_json tk_json(const TkResult& r) {
  ordered_json j;
  j["bound"] = r.bound;
  if (r.counterexample) {
    j["status"] = "counterexample";
    j["counterexample"] = {{"alpha", element_json(r.counterexample->alpha)},
                           {"beta", element_json(r.counterexample->beta)},
                           {"gamma", element_json(r.counterexample->gamma)},
                           {"v_ratio", r.counterexample->v_ratio}};
  } else {
    j["status"] = "no-counterexample-up-to-bound";
    j["counterexample"] = nullptr;
  }
  j["max_abs_v_ratio"] = r.max_abs_v_ratio;
  j["s_unit_count"] = r.s_unit_count;
  j["pairs_checked"] = r.pairs_checked;
  j["squares_found"] = r.squares_found;
  return j;
}

ordered_json hypothesis_json(const HypothesisReport& r) {
  ordered_json j;
  j["field"] = field_json(r.field, r.class_data);
  j["h1"] = r.h1.holds;
  j["reason"] = r.h1.reason;
  ordered_json cl;
  cl["trivial"] = r.cl_sk_2torsion.trivial;
  cl["h"] = r.cl_sk_2torsion.h;
  cl["prime_orders"] = r.cl_sk_2torsion.prime_orders;
  cl["quotient_order"] = r.cl_sk_2torsion.quotient_order;
  j["cl_sk_2torsion_trivial"] = r.cl_sk_2torsion.trivial;
  j["cl_sk"] = cl;
  ordered_json tk = ordered_json::array();
  for (std::size_t i = 0; i < r.s_k.size(); ++i) {
    ordered_json entry;
    entry["prime"] = r.s_k[i].to_string();
    entry["result"] = r.tk_status[i] ? tk_json(*r.tk_status[i]) : ordered_json(nullptr);
    tk.push_back(entry);
  }
  j["tk_status"] = tk;
  j["h2"] = to_string(r.h2);
  return j;
}

ordered_json audit_json(const AuditReport& r) {
  ordered_json j;
  j["solution"] = solution_json(r.solution);
  j["classification"] = {{"is_solution", r.classification.is_solution},
                         {"primitive", r.classification.primitive},
                         {"non_trivial", r.classification.non_trivial}};
  ordered_json divs = ordered_json::array();
  for (const auto& prime : r.primes_dividing_c) divs.push_back(prime.to_string());
  j["primes_above_2_dividing_c"] = divs;
  j["prime"] = r.prime ? ordered_json(r.prime->to_string()) : ordered_json(nullptr);
  j["normalized"] = r.normalized ? solution_json(*r.normalized) : ordered_json(nullptr);
  if (r.profile) {
    j["valuation_profile"] = {{"v_sum", r.profile->v_sum}, {"v_diff", r.profile->v_diff}, {"v_c", r.profile->v_c},
                              {"v2", r.profile->v2},       {"in_wp", r.profile->in_wp},
                              {"dichotomy_holds", r.profile->dichotomy_holds}};
  } else {
    j["valuation_profile"] = nullptr;
  }
  j["frey"] = r.curve ? frey_json(*r.curve) : ordered_json(nullptr);
  if (r.conductor) {
    ordered_json c;
    ordered_json odd = ordered_json::array();
    for (const auto& o : r.conductor->odd_support) {
      odd.push_back({{"prime", o.prime.to_string()},
                     {"v_c", o.v_c},
                     {"v_delta", o.v_delta},
                     {"v_j", o.v_j},
                     {"p_divides_v_delta", o.p_divides_v_delta}});
    }
    c["odd_support"] = odd;
    ordered_json mp = ordered_json::array();
    for (const auto& prime : r.conductor->mp_support) mp.push_back(prime.to_string());
    c["mp_support"] = mp;
    ordered_json np = ordered_json::array();
    for (const auto& b : r.conductor->np_shape) {
      np.push_back({{"prime", b.prime.to_string()}, {"v2", b.v2}, {"exponent_bound", b.exponent_bound}});
    }
    c["np_shape"] = np;
    j["conductor"] = c;
  } else {
    j["conductor"] = nullptr;
  }
  if (r.multiplicative) {
    const auto& m = *r.multiplicative;
    j["multiplicative"] = {{"v_j", m.v_j},
                           {"expected_v_j", m.expected_v_j},
                           {"law_holds", m.law_holds},
                           {"v_5a2_3b", m.v_5a2_3b},
                           {"v_5a2_3b_equals_v2", m.v_5a2_3b_equals_v2},
                           {"exponent_large_enough", m.exponent_large_enough},
                           {"potentially_multiplicative", m.potentially_multiplicative}};
  } else {
    j["multiplicative"] = nullptr;
  }
  ordered_json skips = ordered_json::array();
  for (const auto& s : r.skips) skips.push_back({{"stage", s.stage}, {"reason", s.reason}});
  j["skips"] = skips;
  j["field_h1"] = r.field_h1;
  j["field_h2"] = to_string(r.field_h2);
  j["note"] = r.note;
  return j;
}

ordered_json envelope(const std::string& command, ordered_json inputs, ordered_json results,
                      std::optional<bool> cache_hit) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["toolkit_version"] = toolkit_version();
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["results"] = std::move(results);
  if (cache_hit) j["cache_hit"] = *cache_hit;
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void csv_line(std::ostringstream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << csv_field(cells[i]);
  }
  os << '\n';
}

}  // namespace

std::string to_csv(const Table& table) {
  std::ostringstream os;
  csv_line(os, table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw std::logic_error("csv row width mismatch");
    csv_line(os, row);
  }
  return os.str();
}

Table tabulate_table(const std::vector<TabulateRow>& rows) {
  Table t{{"d", "h", "h_plus", "splitting", "h1"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.d), std::to_string(r.data.h), std::to_string(r.data.h_plus),
                      to_string(r.two_splitting), r.h1 ? "true" : "false"});
  }
  return t;
}

namespace {

// flock on a sidecar file; shared for readers, exclusive for the writer.
class DirLock {
 public:
  DirLock(const std::filesystem::path& dir, bool exclusive) {
    fd_ = ::open((dir / ".lock").c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ >= 0) ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

FieldCache::FieldCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::filesystem::path FieldCache::entry_path(const QuadraticField& field) const {
  return dir_ / ("field_" + std::to_string(field.d()) + ".json");
}

std::optional<ClassData> FieldCache::read(const QuadraticField& field) const {
  const auto path = entry_path(field);
  DirLock lock(dir_, false);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const ordered_json j = ordered_json::parse(in);
    // stale or foreign entries are ignored and later overwritten
    if (j.at("cache_version") != kCacheVersion || j.at("toolkit_version") != toolkit_version() ||
        j.at("d") != field.d()) {
      return std::nullopt;
    }
    const auto& cd = j.at("class_data");
    ClassData data;
    data.h = cd.at("h").get<long>();
    data.h_plus = cd.at("h_plus").get<long>();
    data.unit_norm = cd.at("unit_norm").get<int>();
    if (!cd.at("fundamental_unit").is_null()) {
      data.fundamental_unit = FieldElement::parse(field, cd.at("fundamental_unit").get<std::string>());
    }
    return data;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void FieldCache::write(const QuadraticField& field, const ClassData& data) const {
  ordered_json j;
  j["cache_version"] = kCacheVersion;
  j["toolkit_version"] = toolkit_version();
  j["d"] = field.d();
  j["disc"] = field.disc();
  j["two_splitting"] = to_string(two_splitting(field));
  j["class_data"] = class_data_json(data);
  j["timestamp"] = utc_timestamp();
  const auto path = entry_path(field);
  auto tmp = path;
  tmp += ".tmp";
  DirLock lock(dir_, true);
  {
    std::ofstream out(tmp);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

FieldCache::Lookup FieldCache::class_data(const QuadraticField& field, const Limits& limits) const {
  if (auto cached = read(field)) return {*cached, true};
  Lookup out{freyforge::class_data(field, limits), false};
  write(field, out.data);
  return out;
}

std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag_value) {
  if (const char* env = std::getenv("FREYFORGE_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  if (!flag_value.empty()) return std::filesystem::path(flag_value);
  return std::nullopt;
}

}  // namespace freyforge::report
