#include "freyforge/search.hpp"

#include "freyforge/error.hpp"

#include <omp.h>

#include <algorithm>

namespace freyforge {

namespace {

constexpr long kMaxExponent = 101;

// Integral element in coordinates of the basis {1, w}.
struct Coords {
  Integer x, y;
};

struct Arith {
  Integer t, n;

  Coords mul(const Coords& l, const Coords& r) const {
    const Integer yy = l.y * r.y;
    return {l.x * r.x + n * yy, l.x * r.y + l.y * r.x + t * yy};
  }
  Integer norm(const Coords& e) const { return e.x * e.x + t * e.x * e.y - n * e.y * e.y; }
};

bool leading_positive(const FieldElement& e) { return e.x() > 0 || (e.x() == 0 && e.y() > 0); }

struct Grid {
  std::vector<Coords> elems;  // canonical nonzero elements of the box
  std::vector<Coords> squares;
  std::vector<Coords> fourth;
};

Grid build_grid(const SearchSpec& spec, const Arith& ar) {
  Grid g;
  const bool rational = spec.field.degree() == 1;
  const long ymax = rational ? 0 : spec.height;
  for (long x = 0; x <= spec.height; ++x) {
    for (long y = -ymax; y <= ymax; ++y) {
      if (x == 0 && y <= 0) continue;
      Coords e{Integer(x), Integer(y)};
      Coords sq = ar.mul(e, e);
      g.fourth.push_back(ar.mul(sq, sq));
      g.squares.push_back(std::move(sq));
      g.elems.push_back(std::move(e));
    }
  }
  return g;
}

FieldElement to_element(const QuadraticField& field, const Coords& c) {
  if (field.degree() == 1) return FieldElement(field, Rational(c.x));
  return FieldElement(field, Rational(c.x), Rational(c.y));
}

void scan_row(const SearchSpec& spec, const UnitContext& ctx, const Arith& ar, const Grid& g, std::size_t i,
              std::vector<Solution>& out) {
  const QuadraticField& field = spec.field;
  const auto p = static_cast<unsigned long>(spec.p);
  Integer root;
  for (std::size_t j = 0; j < g.elems.size(); ++j) {
    const Coords diff{g.fourth[i].x - g.squares[j].x, g.fourth[i].y - g.squares[j].y};
    if (diff.x == 0 && diff.y == 0) continue;
    const Integer nd = ar.norm(diff);
    if (!mpz_root(root.get_mpz_t(), nd.get_mpz_t(), p)) continue;
    const FieldElement n = to_element(field, diff);
    for (const FieldElement& c : ctx.pth_roots(n, spec.p)) {
      Solution s{to_element(field, g.elems[i]), to_element(field, g.elems[j]), c, spec.p};
      const Classification cls = classify_solution(s);
      if (!cls.primitive || !cls.non_trivial) continue;
      if (spec.require_P_divides_c && *valuation(c, *spec.require_P_divides_c) <= 0) continue;
      out.push_back(std::move(s));
    }
  }
}

struct Prepared {
  UnitContext ctx;
  Arith ar;
  Grid grid;
};

Prepared prepare(const SearchSpec& spec) {
  spec.validate();
  Arith ar{Integer(static_cast<long>(spec.field.w_trace())), Integer(static_cast<long>(spec.field.w_square_const()))};
  Grid grid = build_grid(spec, ar);
  return {UnitContext(spec.field, spec.limits), ar, std::move(grid)};
}

void finalize(std::vector<Solution>& found) {
  std::sort(found.begin(), found.end(), solution_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
}

}  // namespace

void SearchSpec::validate() const {
  if (height < 1) throw Error(ErrorCode::InvalidArgument, "height must be at least 1");
  if (p < 3) throw Error(ErrorCode::InvalidArgument, "p must be an odd prime >= 3");
  if (!is_probable_prime(Integer(p))) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p > kMaxExponent) {
    throw Error(ErrorCode::ResourceLimit, "p = " + std::to_string(p) + " exceeds " + std::to_string(kMaxExponent));
  }
  if (require_P_divides_c && !(require_P_divides_c->field() == field)) {
    throw Error(ErrorCode::FieldMismatch, "required prime belongs to another field");
  }
  const double side = field.degree() == 1 ? double(height) : double(height) * (2.0 * double(height) + 1.0);
  if (side * side > double(limits.max_search_steps)) {
    throw Error(ErrorCode::ResourceLimit, "search grid of height " + std::to_string(height) + " exceeds " +
                                              std::to_string(limits.max_search_steps) + " cells");
  }
}

Solution canonical_form(const Solution& s) {
  Solution out = s;
  if (!out.a.is_zero() && !leading_positive(out.a)) out.a = -out.a;
  if (!out.b.is_zero() && !leading_positive(out.b)) out.b = -out.b;
  return out;
}

bool solution_less(const Solution& l, const Solution& r) {
  if (l.a != r.a) return element_less(l.a, r.a);
  if (l.b != r.b) return element_less(l.b, r.b);
  if (l.c != r.c) return element_less(l.c, r.c);
  return l.p < r.p;
}

std::vector<Solution> enumerate_solutions_serial(const SearchSpec& spec) {
  const Prepared prep = prepare(spec);
  std::vector<Solution> found;
  for (std::size_t i = 0; i < prep.grid.elems.size(); ++i) scan_row(spec, prep.ctx, prep.ar, prep.grid, i, found);
  finalize(found);
  return found;
}

std::vector<Solution> enumerate_solutions(const SearchSpec& spec, int jobs) {
  const Prepared prep = prepare(spec);
  const long rows = static_cast<long>(prep.grid.elems.size());
  std::vector<Solution> found;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    std::vector<Solution> local;
#pragma omp for schedule(dynamic, 1) nowait
    for (long i = 0; i < rows; ++i) scan_row(spec, prep.ctx, prep.ar, prep.grid, static_cast<std::size_t>(i), local);
#pragma omp critical(search_merge)
    found.insert(found.end(), local.begin(), local.end());
  }
  finalize(found);
  return found;
}

AuditReport audit_solution(const Solution& s, const AuditOptions& options) {
  AuditReport r;
  r.solution = s;
  r.classification = classify_solution(s);
  if (!r.classification.is_solution) {
    throw Error(ErrorCode::NotASolution, s.to_string() + " does not satisfy x^4 - y^2 = z^p");
  }
  const QuadraticField field = s.field();
  const HypothesisReport hyp = hypothesis_report(field, options.tk_bound, options.jobs, options.limits, options.class_data);
  r.field_h1 = hyp.h1.holds;
  r.field_h2 = hyp.h2;
  const std::string field_status = "K " + std::string(r.field_h1 ? "satisfies" : "fails") + " (H1), (H2) " +
                                   to_string(r.field_h2);

  auto skip_all = [&r](const std::string& reason) {
    for (const char* stage : {"normalize", "valuation_profile", "frey", "conductor", "multiplicative"}) {
      r.skips.push_back({stage, reason});
    }
  };
  if (!r.classification.non_trivial) {
    skip_all("trivial solution");
    r.note = "trivial solution; classification only";
    return r;
  }
  if (!r.classification.primitive) {
    skip_all("not primitive");
    r.note = "not primitive; the theorem concerns primitive solutions only";
    return r;
  }

  for (const PrimeIdealAbove& prime : hyp.s_k) {
    if (*valuation(s.c, prime) > 0) r.primes_dividing_c.push_back(prime);
  }

  Solution working = s;
  if (r.primes_dividing_c.empty()) {
    const std::string reason = "no prime above 2 divides c";
    for (const char* stage : {"normalize", "valuation_profile", "multiplicative"}) r.skips.push_back({stage, reason});
  } else {
    r.prime = r.primes_dividing_c.front();
    try {
      working = normalize_to_wp(s, *r.prime);
      r.normalized = working;
      r.profile = valuation_profile(working, *r.prime);
    } catch (const Error& e) {
      r.skips.push_back({"normalize", e.what()});
      r.skips.push_back({"valuation_profile", e.what()});
    }
  }

  r.curve = build_frey(working);
  r.conductor = conductor_data(working);
  if (r.normalized) r.multiplicative = multiplicative_check(working, *r.prime);
  else if (r.prime) r.skips.push_back({"multiplicative", "solution not normalized to W_P"});

  if (!r.prime) {
    r.note = field_status + "; P does not divide c, theorem hypotheses not engaged";
  } else {
    r.note = field_status + "; P | c with p=" + std::to_string(s.p) +
             " below any asymptotic bound, no contradiction with the theorem";
  }
  return r;
}

std::vector<CorpusEntry> valuation_corpus(const std::vector<long>& ds, std::size_t per_field, long max_height,
                                          int jobs) {
  std::vector<CorpusEntry> out;
  for (long d : ds) {
    const QuadraticField field = QuadraticField::make(d);
    const UnitContext ctx(field);
    std::vector<CorpusEntry> here;
    for (const PrimeIdealAbove& prime : s_k(field)) {
      for (long p : {3L, 5L, 7L}) {
        if (p <= 2 * prime.e) continue;
        SearchSpec spec{field, p, max_height, prime, {}};
        for (const Solution& s : enumerate_solutions(spec, jobs)) here.push_back({s, prime});
      }
    }
    if (ctx.fundamental_unit()) {
      // Unit twists keep primitivity and every valuation at P.
      const FieldElement& eps = *ctx.fundamental_unit();
      const std::size_t base = here.size();
      for (long k = 1; here.size() < per_field && base > 0 && k <= 16; ++k) {
        for (std::size_t i = 0; i < base && here.size() < per_field; ++i) {
          const Solution& s = here[i].solution;
          const FieldElement u = eps.pow(k);
          here.push_back({Solution{s.a * u.pow(s.p), s.b * u.pow(2 * s.p), s.c * u.pow(4), s.p}, here[i].prime});
        }
      }
    }
    if (here.size() > per_field) here.resize(per_field);
    out.insert(out.end(), here.begin(), here.end());
  }
  return out;
}

}  // namespace freyforge
