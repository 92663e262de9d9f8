#include "freyforge/local.hpp"

#include "freyforge/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace freyforge {

namespace {

long finite(const Valuation& v, const char* what) {
  if (!v) throw Error(ErrorCode::NotApplicable, std::string(what) + " has infinite valuation");
  return *v;
}

void require_above_two(const PrimeIdealAbove& prime) {
  if (prime.rational_prime != 2) {
    throw Error(ErrorCode::NotApplicable, "prime " + prime.to_string() + " is not above 2");
  }
}

Classification require_primitive(const Solution& s) {
  const Classification cls = classify_solution(s);
  if (!cls.is_solution) throw Error(ErrorCode::NotASolution, s.to_string() + " does not satisfy x^4 - y^2 = z^p");
  if (!cls.primitive) throw Error(ErrorCode::NotPrimitive, s.to_string() + " is not primitive");
  return cls;
}

void require_primitive_nontrivial(const Solution& s) {
  if (!require_primitive(s).non_trivial) throw Error(ErrorCode::NotApplicable, s.to_string() + " is trivial");
}

Valuation ratio_valuation(const FieldElement& num, const FieldElement& den, const PrimeIdealAbove& prime) {
  const Valuation vn = valuation(num, prime);
  const Valuation vd = valuation(den, prime);
  if (!vn) return std::nullopt;
  return *vn - *vd;
}

}  // namespace

Solution normalize_to_wp(const Solution& s, const PrimeIdealAbove& prime) {
  require_above_two(prime);
  require_primitive_nontrivial(s);
  const long v_c = finite(valuation(s.c, prime), "c");
  if (v_c == 0) throw Error(ErrorCode::NotApplicable, prime.to_string() + " does not divide c");
  const long v2 = prime.e;
  if (s.p <= 2 * v2) {
    throw Error(ErrorCode::ExponentTooSmall, "p = " + std::to_string(s.p) + " <= 2 v_P(2) = " + std::to_string(2 * v2));
  }
  const FieldElement a_sq = s.a * s.a;
  if (valuation(a_sq + s.b, prime) == Valuation(v2)) return s;
  if (valuation(a_sq - s.b, prime) == Valuation(v2)) return Solution{s.a, -s.b, s.c, s.p};
  throw std::logic_error("neither (a,b,c) nor (a,-b,c) lies in W_P for " + s.to_string());
}

ValuationProfile valuation_profile(const Solution& s, const PrimeIdealAbove& prime) {
  require_above_two(prime);
  require_primitive_nontrivial(s);
  ValuationProfile out;
  out.v_c = finite(valuation(s.c, prime), "c");
  if (out.v_c == 0) throw Error(ErrorCode::NotApplicable, prime.to_string() + " does not divide c");
  const FieldElement a_sq = s.a * s.a;
  out.v_sum = finite(valuation(a_sq + s.b, prime), "a^2 + b");
  out.v_diff = finite(valuation(a_sq - s.b, prime), "a^2 - b");
  out.v2 = prime.e;
  out.in_wp = out.v_sum == out.v2;
  out.dichotomy_holds = std::min(out.v_sum, out.v_diff) == out.v2 &&
                        std::max(out.v_sum, out.v_diff) == s.p * out.v_c - out.v2;
  if (s.p > 2 * out.v2 && !out.dichotomy_holds) {
    throw std::logic_error("valuation dichotomy violated for " + s.to_string());
  }
  if (out.in_wp && out.v_diff != s.p * out.v_c - out.v2) {
    throw std::logic_error("W_P valuation law violated for " + s.to_string());
  }
  return out;
}

std::vector<PrimeIdealAbove> ConductorData::conductor_support() const {
  std::vector<PrimeIdealAbove> out = mp_support;
  for (const auto& entry : np_shape) out.push_back(entry.prime);
  return out;
}

ConductorData conductor_data(const Solution& s) {
  // b = 0 still gives a curve; build_frey rejects c = 0
  require_primitive(s);
  const QuadraticField field = s.field();
  const FreyCurve curve = build_frey(s);
  ConductorData out;
  for (const auto& [q, _] : factor(s.c.norm().get_num())) {
    if (q == 2) continue;
    for (const PrimeIdealAbove& prime : split_prime(field, q)) {
      const long v_c = *valuation(s.c, prime);
      if (v_c == 0) continue;
      OddConductorPrime entry{prime, v_c, *valuation(curve.delta, prime), 0, false};
      entry.v_j = *ratio_valuation(curve.j_num, curve.j_den, prime);
      entry.p_divides_v_delta = entry.v_delta % s.p == 0;
      if (entry.v_j < 0 && entry.p_divides_v_delta) out.mp_support.push_back(prime);
      out.odd_support.push_back(std::move(entry));
    }
  }
  for (const PrimeIdealAbove& prime : s_k(field)) {
    out.bound_at_2.push_back(TwoAdicBound{prime, prime.e, 2 + 6L * prime.e});
  }
  out.np_shape = out.bound_at_2;
  return out;
}

MultiplicativeCheck multiplicative_check(const Solution& s, const PrimeIdealAbove& prime) {
  require_above_two(prime);
  const Classification cls = classify_solution(s);
  const long v2 = prime.e;
  const FieldElement a_sq = s.a * s.a;
  if (!cls.is_solution || !cls.primitive || !cls.non_trivial ||
      valuation(a_sq + s.b, prime) != Valuation(v2)) {
    throw Error(ErrorCode::NotNormalized, s.to_string() + " is not in W_P for " + prime.to_string());
  }
  const FreyCurve curve = build_frey(s);
  const QuadraticField field = s.field();
  MultiplicativeCheck out;
  out.v_j = finite(ratio_valuation(curve.j_num, curve.j_den, prime), "j");
  out.expected_v_j = 8 * v2 - s.p * *valuation(s.c, prime);
  out.law_holds = out.v_j == out.expected_v_j;
  const FieldElement five_a2_3b =
      FieldElement(field, 5) * a_sq - FieldElement(field, 3) * s.b;
  out.v_5a2_3b = finite(valuation(five_a2_3b, prime), "5a^2 - 3b");
  out.v_5a2_3b_equals_v2 = out.v_5a2_3b == v2;
  out.exponent_large_enough = s.p > 8 * v2;
  out.potentially_multiplicative = out.v_j < 0;
  return out;
}

}  // namespace freyforge
