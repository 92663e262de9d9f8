#pragma once

#include "freyforge/field.hpp"

#include <array>

namespace freyforge {

// A candidate triple for x^4 - y^2 = z^p over K.
struct Solution {
  FieldElement a, b, c;
  long p = 3;

  QuadraticField field() const { return a.field(); }
  bool satisfies_equation() const;
  std::string to_string() const;

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Long Weierstrass coefficients [a1, a2, a3, a4, a6].
using WeierstrassModel = std::array<FieldElement, 5>;

struct WeierstrassInvariants {
  FieldElement b2, b4, b6, b8, c4, c6, delta;
};

// General discriminant formulas; independent of the Frey closed forms.
WeierstrassInvariants weierstrass_invariants(const WeierstrassModel& model);

// y^2 = x^3 + 4a x^2 + 2(a^2 + b) x, with j kept as the exact ratio c4^3 / delta.
struct FreyCurve {
  FieldElement a2, a4;
  FieldElement delta;
  FieldElement c4;
  FieldElement j_num;
  FieldElement j_den;

  WeierstrassModel model() const;
  FieldElement j() const { return j_num / j_den; }
  // (0, 0) lies on the curve and 2*(0,0) = O (vertical tangent).
  bool has_two_torsion_origin() const;
};

FreyCurve build_frey(const Solution& s);

struct LambdaParam {
  FieldElement lambda;
  FieldElement j;
};

// lambda = 4(a^2 - b)/(a^2 + b) and j(lambda) = 2^8 (lambda + 1)^3 / lambda.
LambdaParam lambda_of(const Solution& s);

// (u r^((p-1)/4), v r^((p-1)/2), r) for p = 1 mod 4; (u r^((3p-1)/4), v r^((3p-1)/2), r^3) for p = 3 mod 4,
// where r = u^4 - v^2.
Solution construct_nonprimitive(const FieldElement& u, const FieldElement& v, long p);

struct Classification {
  bool is_solution = false;
  bool primitive = false;
  bool non_trivial = false;
};

Classification classify_solution(const Solution& s);

}  // namespace freyforge
