#include "freyforge/hypotheses.hpp"

#include "freyforge/error.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace freyforge {

H1Result check_h1(const QuadraticField& field, const Limits& limits) {
  return check_h1(field, class_data(field, limits));
}

H1Result check_h1(const QuadraticField& field, const ClassData& data) {
  H1Result out;
  out.class_data = data;
  out.s_k = s_k(field);
  out.two_splitting = out.s_k.size() == 2 ? Splitting::Split : out.s_k.front().splitting;
  const bool odd = out.class_data.h_plus % 2 == 1;
  const bool unique = out.s_k.size() == 1;
  out.holds = odd && unique;
  if (!unique) {
    out.reason = "#S_K=" + std::to_string(out.s_k.size());
  } else if (!odd) {
    out.reason = "h_plus=" + std::to_string(out.class_data.h_plus) + " is even";
  } else {
    out.reason = "h_plus odd and #S_K=1";
  }
  return out;
}

ClS2Result cl_sk_2torsion(const QuadraticField& field, const Limits& limits) {
  return cl_sk_2torsion(field, class_data(field, limits));
}

ClS2Result cl_sk_2torsion(const QuadraticField& field, const ClassData& data) {
  ClS2Result out;
  out.h = data.h;
  const auto primes = s_k(field);
  for (const PrimeIdealAbove& prime : primes) out.prime_orders.push_back(prime_class_order(prime));
  // Above 2 there are at most two primes and P1 P2 = (2), so [P2] = [P1]^-1 generates the same subgroup.
  out.subgroup_order = out.prime_orders.front();
  if (out.h % out.subgroup_order != 0) throw std::logic_error("class order does not divide h");
  out.quotient_order = out.h / out.subgroup_order;
  out.trivial = out.quotient_order % 2 == 1;
  return out;
}

namespace {

struct RowOutcome {
  std::optional<std::pair<std::size_t, std::size_t>> first;
  std::optional<TkWitness> witness;
  long max_abs = 0;
  long squares = 0;
  long pairs = 0;
};

void scan_row(const std::vector<FieldElement>& units, std::size_t i, const PrimeIdealAbove& prime, long limit,
              RowOutcome& acc) {
  const FieldElement& alpha = units[i];
  for (std::size_t j = 0; j < units.size(); ++j) {
    const FieldElement& beta = units[j];
    ++acc.pairs;
    auto gamma = sqrt_in_field(alpha + beta);
    if (!gamma) continue;
    ++acc.squares;
    const long v = *valuation(alpha, prime) - *valuation(beta, prime);
    acc.max_abs = std::max(acc.max_abs, std::labs(v));
    if (std::labs(v) > limit && (!acc.first || std::make_pair(i, j) < *acc.first)) {
      acc.first = std::make_pair(i, j);
      acc.witness = TkWitness{alpha, beta, *gamma, v};
    }
  }
}

void merge(RowOutcome& into, const RowOutcome& from) {
  into.max_abs = std::max(into.max_abs, from.max_abs);
  into.squares += from.squares;
  into.pairs += from.pairs;
  if (from.first && (!into.first || *from.first < *into.first)) {
    into.first = from.first;
    into.witness = from.witness;
  }
}

TkResult finish(const RowOutcome& acc, long bound, std::size_t count) {
  TkResult out;
  out.bound = bound;
  out.counterexample = acc.witness;
  out.max_abs_v_ratio = acc.max_abs;
  out.squares_found = acc.squares;
  out.pairs_checked = acc.pairs;
  out.s_unit_count = static_cast<long>(count);
  return out;
}

std::vector<FieldElement> falsifier_units(const UnitContext& ctx, const PrimeIdealAbove& prime, long bound) {
  if (prime.rational_prime != 2) throw Error(ErrorCode::WrongPrime, prime.to_string() + " is not above 2");
  if (!(prime.field() == ctx.field())) throw Error(ErrorCode::FieldMismatch, "prime from another field");
  return s_units_bounded(ctx, s_k(ctx.field()), bound);
}

}  // namespace

TkResult tk_falsifier_serial(const UnitContext& ctx, const PrimeIdealAbove& prime, long bound) {
  const auto units = falsifier_units(ctx, prime, bound);
  const long limit = 6L * prime.e;
  RowOutcome acc;
  for (std::size_t i = 0; i < units.size(); ++i) scan_row(units, i, prime, limit, acc);
  return finish(acc, bound, units.size());
}

TkResult tk_falsifier(const UnitContext& ctx, const PrimeIdealAbove& prime, long bound, int jobs) {
  const auto units = falsifier_units(ctx, prime, bound);
  const long limit = 6L * prime.e;
  const long n = static_cast<long>(units.size());
  RowOutcome total;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    RowOutcome local;
#pragma omp for schedule(dynamic, 1) nowait
    for (long i = 0; i < n; ++i) scan_row(units, static_cast<std::size_t>(i), prime, limit, local);
#pragma omp critical(tk_merge)
    merge(total, local);
  }
  return finish(total, bound, units.size());
}

const char* to_string(H2Status s) {
  switch (s) {
    case H2Status::TrueUpToBound: return "true-up-to-bound";
    case H2Status::False: return "false";
    case H2Status::Unknown: return "unknown";
  }
  return "unknown";
}

HypothesisReport hypothesis_report(const QuadraticField& field, std::optional<long> tk_bound, int jobs,
                                   const Limits& limits, const std::optional<ClassData>& precomputed) {
  HypothesisReport out;
  out.field = field;
  out.class_data = precomputed ? *precomputed : class_data(field, limits);
  out.h1 = check_h1(field, out.class_data);
  out.s_k = out.h1.s_k;
  out.cl_sk_2torsion = cl_sk_2torsion(field, out.class_data);
  out.tk_status.resize(out.s_k.size());
  if (tk_bound) {
    const UnitContext ctx(field, limits);
    for (std::size_t i = 0; i < out.s_k.size(); ++i) out.tk_status[i] = tk_falsifier(ctx, out.s_k[i], *tk_bound, jobs);
  }
  if (!out.cl_sk_2torsion.trivial) {
    out.h2 = H2Status::False;
  } else if (tk_bound) {
    const bool any_clean = std::any_of(out.tk_status.begin(), out.tk_status.end(),
                                       [](const auto& r) { return r && r->no_counterexample(); });
    out.h2 = any_clean ? H2Status::TrueUpToBound : H2Status::False;
  }
  return out;
}

MocanuCheck mocanu_identity_check(const FieldElement& a, const FieldElement& b) {
  const QuadraticField field = a.field();
  const FieldElement a_sq = a * a;
  const FieldElement disc_part = a_sq - FieldElement(field, 4) * b;
  if (b.is_zero() || disc_part.is_zero()) {
    throw Error(ErrorCode::DegenerateCurve, "y^2 = x^3 + ax^2 + bx is singular for a=" + a.to_string() +
                                                ", b=" + b.to_string());
  }
  const FieldElement k256(field, 256);
  MocanuCheck out;
  const FieldElement num = a_sq - FieldElement(field, 3) * b;
  out.j = k256 * num * num * num / (b * b * disc_part);
  out.mu = disc_part / b;
  const FieldElement mu1 = out.mu + FieldElement(field, 1);
  out.j_via_mu = k256 * mu1 * mu1 * mu1 / out.mu;
  out.identity_holds = out.j == out.j_via_mu;
  for (const PrimeIdealAbove& prime : s_k(field)) {
    MocanuPrimeLaw law{prime, valuation(out.j, prime), valuation(mu1, prime), valuation(out.mu, prime), false};
    if (!law.v_j || !law.v_mu_plus_1) {
      law.holds = !law.v_j && !law.v_mu_plus_1;  // j = 0 exactly when mu = -1
    } else {
      law.holds = *law.v_j == 8L * prime.e + 3 * *law.v_mu_plus_1 - *law.v_mu;
    }
    out.laws.push_back(std::move(law));
  }
  return out;
}

}  // namespace freyforge
