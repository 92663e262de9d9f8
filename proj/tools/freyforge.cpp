// freyforge command line: field data, hypothesis checks, solution search and audits.
#include "freyforge/error.hpp"
#include "freyforge/report.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <iostream>

using namespace freyforge;
using report::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Common {
  std::string format = "json";
  std::string cache_dir;
  int jobs = 0;
};

struct Output {
  ordered_json json;
  report::Table table;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--cache-dir", c.cache_dir, "field cache directory (FREYFORGE_CACHE_DIR wins)");
  cmd->add_option("--jobs", c.jobs, "worker threads, 0 = OpenMP default")->check(CLI::NonNegativeNumber);
}

// Class data via the cache when one is configured.
struct ClassLookup {
  ClassData data;
  std::optional<bool> cache_hit;
};

ClassLookup lookup_class_data(const QuadraticField& field, const Common& c) {
  if (auto dir = report::resolve_cache_dir(c.cache_dir)) {
    auto r = report::FieldCache(*dir).class_data(field);
    return {r.data, r.hit};
  }
  return {class_data(field), std::nullopt};
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string join_labels(const std::vector<PrimeIdealAbove>& primes) {
  std::string out;
  for (const auto& p : primes) out += (out.empty() ? "" : ";") + p.to_string();
  return out;
}

Output cmd_field_info(long d, const Common& c) {
  const QuadraticField field = QuadraticField::make(d);
  const ClassLookup cl = lookup_class_data(field, c);
  const ordered_json fj = report::field_json(field, cl.data);
  Output out{report::envelope("field-info", {{"d", d}}, fj, cl.cache_hit), {}};
  out.table.header = {"d", "disc", "two_splitting", "h", "h_plus", "fundamental_unit", "unit_norm"};
  out.table.rows.push_back({std::to_string(d), std::to_string(field.disc()), fj["two_splitting"].get<std::string>(),
                            std::to_string(cl.data.h), std::to_string(cl.data.h_plus),
                            cl.data.fundamental_unit ? cl.data.fundamental_unit->to_string() : "",
                            std::to_string(cl.data.unit_norm)});
  return out;
}

Output cmd_check(long d, std::optional<long> tk_bound, const Common& c) {
  const QuadraticField field = QuadraticField::make(d);
  if (tk_bound && *tk_bound < 0) throw Error(ErrorCode::InvalidArgument, "--tk-bound must be >= 0");
  const ClassLookup cl = lookup_class_data(field, c);
  const HypothesisReport r = hypothesis_report(field, tk_bound, c.jobs, {}, cl.data);
  ordered_json inputs{{"d", d}, {"tk_bound", tk_bound ? ordered_json(*tk_bound) : ordered_json(nullptr)}};
  Output out{report::envelope("check", inputs, report::hypothesis_json(r), cl.cache_hit), {}};
  out.table.header = {"d", "h", "h_plus", "two_splitting", "h1", "reason", "cl_sk_2torsion_trivial", "h2"};
  out.table.rows.push_back({std::to_string(d), std::to_string(r.class_data.h), std::to_string(r.class_data.h_plus),
                            to_string(r.h1.two_splitting), bool_text(r.h1.holds), r.h1.reason,
                            bool_text(r.cl_sk_2torsion.trivial), to_string(r.h2)});
  return out;
}

Output cmd_search(long d, long p, long height, bool even_c, std::optional<long> require_p, const Common& c) {
  const QuadraticField field = QuadraticField::make(d);
  const auto primes = s_k(field);
  SearchSpec spec{field, p, height, std::nullopt, {}};
  if (even_c) spec.require_P_divides_c = primes.front();
  if (require_p) {
    if (*require_p < 0 || *require_p >= static_cast<long>(primes.size())) {
      throw Error(ErrorCode::InvalidArgument, "--require-P must index S_K (size " + std::to_string(primes.size()) + ")");
    }
    spec.require_P_divides_c = primes[static_cast<std::size_t>(*require_p)];
  }
  const ClassLookup cl = lookup_class_data(field, c);
  const auto found = enumerate_solutions(spec, c.jobs);
  AuditOptions opts;
  opts.class_data = cl.data;
  ordered_json sols = ordered_json::array();
  Output out;
  out.table.header = {"a", "b", "c", "p", "primes_above_2_dividing_c", "normalized_b", "note"};
  for (const Solution& s : found) {
    const AuditReport a = audit_solution(s, opts);
    sols.push_back({{"solution", report::solution_json(s)}, {"audit", report::audit_json(a)}});
    out.table.rows.push_back({s.a.to_string(), s.b.to_string(), s.c.to_string(), std::to_string(s.p),
                              join_labels(a.primes_dividing_c), a.normalized ? a.normalized->b.to_string() : "",
                              a.note});
  }
  ordered_json inputs{{"d", d},
                      {"p", p},
                      {"height", height},
                      {"require_P_divides_c", spec.require_P_divides_c
                                                  ? ordered_json(spec.require_P_divides_c->to_string())
                                                  : ordered_json(nullptr)}};
  ordered_json results{{"count", found.size()}, {"solutions", sols}};
  out.json = report::envelope("search", inputs, results, cl.cache_hit);
  return out;
}

Solution parse_solution(long d, const std::string& a, const std::string& b, const std::string& cc, long p) {
  const QuadraticField field = QuadraticField::make(d);
  return Solution{FieldElement::parse(field, a), FieldElement::parse(field, b), FieldElement::parse(field, cc), p};
}

ordered_json solution_inputs(long d, const Solution& s) {
  ordered_json j{{"d", d}};
  const ordered_json sj = report::solution_json(s);
  for (const auto& [k, v] : sj.items()) j[k] = v;
  return j;
}

Output cmd_frey(long d, const Solution& s) {
  const FreyCurve curve = build_frey(s);
  const LambdaParam lp = lambda_of(s);
  ordered_json results = report::frey_json(curve);
  results["lambda"] = lp.lambda.to_string();
  results["is_solution"] = s.satisfies_equation();
  Output out{report::envelope("frey", solution_inputs(d, s), results), {}};
  out.table.header = {"a2", "a4", "delta", "c4", "j", "lambda", "is_solution"};
  out.table.rows.push_back({curve.a2.to_string(), curve.a4.to_string(), curve.delta.to_string(), curve.c4.to_string(),
                            curve.j().to_string(), lp.lambda.to_string(), bool_text(s.satisfies_equation())});
  return out;
}

Output cmd_audit(long d, const Solution& s, std::optional<long> tk_bound, const Common& c) {
  const ClassLookup cl = lookup_class_data(s.field(), c);
  AuditOptions opts;
  opts.tk_bound = tk_bound;
  opts.jobs = c.jobs;
  opts.class_data = cl.data;
  const AuditReport a = audit_solution(s, opts);
  ordered_json inputs = solution_inputs(d, s);
  inputs["tk_bound"] = tk_bound ? ordered_json(*tk_bound) : ordered_json(nullptr);
  const ordered_json aj = report::audit_json(a);
  Output out{report::envelope("audit", inputs, aj, cl.cache_hit), {}};
  out.table.header = {"key", "value"};
  for (const auto& [k, v] : aj.items()) out.table.rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
  return out;
}

bool is_prime_5mod8(long d) { return d > 0 && d % 8 == 5 && is_probable_prime(Integer(d)); }

Output cmd_tabulate(long from, long to, bool only_5mod8, const Common& c) {
  if (from > to) throw Error(ErrorCode::InvalidArgument, "--d-from must not exceed --d-to");
  std::vector<QuadraticField> fields;
  for (long d = from; d <= to; ++d) {
    if (d == 0 || !is_squarefree(Integer(d))) continue;
    if (only_5mod8 && !is_prime_5mod8(d)) continue;
    fields.push_back(QuadraticField::make(d));
  }
  std::vector<report::TabulateRow> rows(fields.size());
  std::vector<char> computed(fields.size(), 0);
  std::optional<report::FieldCache> cache;
  if (auto dir = report::resolve_cache_dir(c.cache_dir)) cache.emplace(*dir);
  bool all_hit = true;
  if (cache) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (auto hit = cache->read(fields[i])) {
        rows[i].data = *hit;
        computed[i] = 1;
      }
    }
  }
  // per-d class groups are independent; results land in their own slot
  const long n = static_cast<long>(fields.size());
  std::exception_ptr failure;
  const int threads = c.jobs > 0 ? c.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    if (computed[i]) continue;
    try {
      rows[i].data = class_data(fields[i]);
    } catch (...) {
#pragma omp critical(tabulate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  ordered_json jrows = ordered_json::array();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (!computed[i]) {
      all_hit = false;
      if (cache) cache->write(fields[i], rows[i].data);
    }
    const H1Result h1 = check_h1(fields[i], rows[i].data);
    rows[i].d = fields[i].d();
    rows[i].two_splitting = h1.two_splitting;
    rows[i].h1 = h1.holds;
    jrows.push_back({{"d", rows[i].d},
                     {"h", rows[i].data.h},
                     {"h_plus", rows[i].data.h_plus},
                     {"splitting", to_string(rows[i].two_splitting)},
                     {"h1", rows[i].h1}});
  }
  ordered_json inputs{{"d_from", from}, {"d_to", to}, {"primes_5mod8", only_5mod8}};
  std::optional<bool> hit;
  if (cache) hit = all_hit;
  return {report::envelope("tabulate", inputs, {{"count", rows.size()}, {"rows", jrows}}, hit),
          report::tabulate_table(rows)};
}

void emit(const Output& out, const Common& c) {
  if (c.format == "csv") {
    std::cout << report::to_csv(out.table);
  } else {
    std::cout << out.json.dump(2) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freyforge: Frey curves and x^4 - y^2 = z^p over Q and quadratic fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::toolkit_version());

  Common common;
  long d = 1, p = 5, height = 1, d_from = 2, d_to = 100;
  std::optional<long> tk_bound, require_p;
  bool even_c = false, only_5mod8 = false;
  std::string a_text, b_text, c_text;

  auto* field_info = app.add_subcommand("field-info", "discriminant, splitting of 2, class numbers, unit");
  field_info->add_option("--d", d, "squarefree d; 1 means Q")->required();
  add_common(field_info, common);

  auto* check = app.add_subcommand("check", "hypotheses (H1), Cl_S[2], bounded T_K falsifier");
  check->add_option("--d", d)->required();
  check->add_option("--tk-bound", tk_bound, "exponent bound for the S-unit falsifier");
  add_common(check, common);

  auto* search = app.add_subcommand("search", "primitive solutions with |coordinates of a, b| <= height");
  search->add_option("--d", d)->required();
  search->add_option("--p", p)->required();
  search->add_option("--height", height)->required();
  auto* even = search->add_flag("--even-c", even_c, "keep solutions with the first prime above 2 dividing c");
  search->add_option("--require-P", require_p, "keep solutions with the i-th prime above 2 dividing c")
      ->excludes(even);
  add_common(search, common);

  auto add_solution_options = [&](CLI::App* cmd) {
    cmd->add_option("--d", d)->required();
    cmd->add_option("--a", a_text, "x or x,y in the integral basis")->required();
    cmd->add_option("--b", b_text)->required();
    cmd->add_option("--c", c_text)->required();
    cmd->add_option("--p", p)->required();
  };
  auto* frey = app.add_subcommand("frey", "Frey curve invariants of (a, b, c)");
  add_solution_options(frey);
  add_common(frey, common);

  auto* audit = app.add_subcommand("audit", "run every local check on one solution");
  add_solution_options(audit);
  audit->add_option("--tk-bound", tk_bound);
  add_common(audit, common);

  auto* tabulate = app.add_subcommand("tabulate", "class numbers and (H1) over a range of d");
  tabulate->add_option("--d-from", d_from);
  tabulate->add_option("--d-to", d_to);
  tabulate->add_flag("--primes-5mod8", only_5mod8, "only prime d = 5 mod 8");
  add_common(tabulate, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    Output out;
    if (*field_info) out = cmd_field_info(d, common);
    else if (*check) out = cmd_check(d, tk_bound, common);
    else if (*search) out = cmd_search(d, p, height, even_c, require_p, common);
    else if (*frey) out = cmd_frey(d, parse_solution(d, a_text, b_text, c_text, p));
    else if (*audit) out = cmd_audit(d, parse_solution(d, a_text, b_text, c_text, p), tk_bound, common);
    else out = cmd_tabulate(d_from, d_to, only_5mod8, common);
    emit(out, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ResourceLimit ? kExitResource : kExitUsage;
  }
  return 0;
}
