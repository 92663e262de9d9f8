#pragma once

#include "freyforge/frey.hpp"

#include <vector>

namespace freyforge {

struct ValuationProfile {
  long v_sum = 0;   // v_P(a^2 + b)
  long v_diff = 0;  // v_P(a^2 - b)
  long v_c = 0;
  long v2 = 0;      // v_P(2)
  bool in_wp = false;
  // one of v_sum, v_diff is v2 and the other p v_c - v2; guaranteed when p > 2 v_P(2).
  bool dichotomy_holds = false;
};

// Returns s or (a, -b, c), whichever has v_P(a^2 + b) = v_P(2).
// Throws NotApplicable (P not above 2 or P does not divide c), ExponentTooSmall (p <= 2 v_P(2)),
// NotPrimitive.
Solution normalize_to_wp(const Solution& s, const PrimeIdealAbove& prime);

ValuationProfile valuation_profile(const Solution& s, const PrimeIdealAbove& prime);

struct OddConductorPrime {
  PrimeIdealAbove prime;
  long v_c = 0;
  long v_delta = 0;
  long v_j = 0;  // negative for multiplicative reduction
  bool p_divides_v_delta = false;
};

struct TwoAdicBound {
  PrimeIdealAbove prime;
  long v2 = 0;
  long exponent_bound = 0;  // 2 + 6 v_P(2)
};

// Conductor structure of the Frey curve: multiplicative primes away from 2 and the bound at S_K.
struct ConductorData {
  std::vector<OddConductorPrime> odd_support;
  std::vector<TwoAdicBound> bound_at_2;
  std::vector<PrimeIdealAbove> mp_support;  // odd primes with p | v(Delta)
  std::vector<TwoAdicBound> np_shape;       // N_p is supported on S_K with these exponent bounds

  // Union of M_p and N_p supports.
  std::vector<PrimeIdealAbove> conductor_support() const;
};

ConductorData conductor_data(const Solution& s);

struct MultiplicativeCheck {
  long v_j = 0;
  long expected_v_j = 0;  // 8 v_P(2) - p v_P(c)
  bool law_holds = false;
  long v_5a2_3b = 0;
  bool v_5a2_3b_equals_v2 = false;
  // negativity of v_j is only asserted when p > 8 v_P(2)
  bool exponent_large_enough = false;
  bool potentially_multiplicative = false;
};

// Requires s in W_P (NotNormalized otherwise). Small p degrades to reporting the law.
MultiplicativeCheck multiplicative_check(const Solution& s, const PrimeIdealAbove& prime);

}  // namespace freyforge
